#include "fermatlab/roots.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "fermatlab/errors.hpp"

namespace fermatlab {

namespace {

using cld = std::complex<long double>;

constexpr int kMaxAberthIterations = 2000;

struct Evaluation {
  cld value;
  cld derivative;
  long double value_error;
  long double derivative_error;
};

struct NumericCoeffs {
  std::vector<cld> c;
  std::vector<long double> error;  // per-coefficient bound on |c_k - exact|
};

NumericCoeffs to_numeric(const std::vector<CycloNumber>& coeffs) {
  NumericCoeffs out;
  constexpr long double double_unit = 0x1p-52L;
  for (const auto& x : coeffs) {
    out.c.push_back(x.approx());
    out.error.push_back(4 * double_unit * static_cast<long double>(x.coefficient_l1()));
  }
  return out;
}

// Horner for P and P' with running bounds on the rounding error.
Evaluation evaluate(const NumericCoeffs& p, cld x) {
  const std::size_t n = p.c.size() - 1;
  const long double ax = std::abs(x);
  cld v = 0;
  cld dv = 0;
  long double abs_v = 0;
  long double abs_dv = 0;
  long double coef_v = 0;
  long double coef_dv = 0;
  for (std::size_t k = n + 1; k-- > 0;) {
    dv = dv * x + v;
    abs_dv = abs_dv * ax + abs_v;
    coef_dv = coef_dv * ax + coef_v;
    v = v * x + p.c[k];
    abs_v = abs_v * ax + std::abs(p.c[k]);
    coef_v = coef_v * ax + p.error[k];
  }
  const long double gamma = 4 * static_cast<long double>(n + 2) * std::numeric_limits<long double>::epsilon();
  return {v, dv, gamma * abs_v + coef_v, gamma * abs_dv + coef_dv};
}

std::vector<cld> aberth(const NumericCoeffs& p) {
  const std::size_t n = p.c.size() - 1;
  const long double lead = std::abs(p.c.back());
  const long double scale = std::pow(std::abs(p.c.front()) / lead, 1.0L / static_cast<long double>(n));
  std::vector<cld> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) / static_cast<long double>(n) + 0.4L;
    x[k] = std::polar(scale * (1 + 0.1L * static_cast<long double>(k) / static_cast<long double>(n)), angle);
  }
  for (int it = 0; it < kMaxAberthIterations; ++it) {
    long double largest_step = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const Evaluation e = evaluate(p, x[k]);
      if (e.value == cld(0)) continue;
      const cld ratio = e.value / e.derivative;
      cld repulsion = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += cld(1) / (x[k] - x[j]);
      const cld step = ratio / (cld(1) - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      x[k] -= step;
      largest_step = std::max(largest_step, std::abs(step) / std::max(1.0L, std::abs(x[k])));
    }
    if (largest_step < 64 * std::numeric_limits<long double>::epsilon()) break;
  }
  return x;
}

}  // namespace

std::vector<IsolatedRoot> isolate_roots(const UniPoly& squarefree) {
  if (squarefree.is_zero()) throw PreconditionError("cannot isolate the roots of the zero polynomial");
  std::vector<IsolatedRoot> roots;
  std::vector<CycloNumber> coeffs = squarefree.coeffs();
  if (coeffs.size() > 1 && coeffs.front().is_zero()) {
    roots.push_back({cld(0), 0, true});
    coeffs.erase(coeffs.begin());
    if (coeffs.front().is_zero()) throw PreconditionError("polynomial is not squarefree at the origin");
  }
  if (coeffs.size() <= 1) return roots;

  const NumericCoeffs p = to_numeric(coeffs);
  const auto n = static_cast<long double>(coeffs.size() - 1);
  const std::size_t first = roots.size();
  for (const cld& x : aberth(p)) {
    const Evaluation e = evaluate(p, x);
    const long double denom = std::abs(e.derivative) - e.derivative_error;
    if (!(denom > 0))
      throw RootIsolationError("derivative indistinguishable from zero near root " + std::to_string(static_cast<double>(x.real())) +
                               (x.imag() < 0 ? "" : "+") + std::to_string(static_cast<double>(x.imag())) + "i");
    roots.push_back({x, n * (std::abs(e.value) + e.value_error) / denom, false});
  }
  for (std::size_t i = first; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i].center - roots[j].center) <= roots[i].radius + roots[j].radius)
        throw RootIsolationError("inclusion disks overlap; roots not separated at long double precision");
  return roots;
}

}  // namespace fermatlab
