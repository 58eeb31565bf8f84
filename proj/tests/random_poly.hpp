// Random generators shared by the test suites.
#pragma once

#include <random>
#include <vector>

#include "fermatlab/cyclo.hpp"
#include "fermatlab/multipoly.hpp"

namespace fermatlab::testing {

inline CycloNumber random_cyclo(std::mt19937_64& rng, int order, int magnitude = 9) {
  std::uniform_int_distribution<long> num(-magnitude, magnitude);
  std::uniform_int_distribution<long> den(1, magnitude);
  const int deg = CycloField::get(order)->degree();
  std::vector<Rational> c;
  for (int k = 0; k < deg; ++k) {
    Rational r(num(rng), den(rng));
    r.canonicalize();
    c.push_back(r);
  }
  return CycloNumber::from_power_coeffs(order, c);
}

inline CycloNumber random_nonzero_cyclo(std::mt19937_64& rng, int order, int magnitude = 9) {
  for (;;) {
    CycloNumber x = random_cyclo(rng, order, magnitude);
    if (!x.is_zero()) return x;
  }
}

/// Random polynomial of total degree <= max_degree with about `terms` terms.
inline MultiPoly random_poly(std::mt19937_64& rng, int nvars, int max_degree, int terms, int order = 4) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  MultiPoly f(nvars);
  for (int t = 0; t < terms; ++t) {
    Exponent e(static_cast<std::size_t>(nvars), 0);
    int budget = deg(rng);
    for (int v = 0; v < nvars && budget > 0; ++v) {
      std::uniform_int_distribution<int> take(0, budget);
      const int k = v == nvars - 1 ? budget : take(rng);
      e[static_cast<std::size_t>(v)] = k;
      budget -= k;
    }
    std::shuffle(e.begin(), e.end(), rng);
    f.add_term(e, random_nonzero_cyclo(rng, order, 5));
  }
  return f;
}

}  // namespace fermatlab::testing
