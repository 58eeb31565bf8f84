#include <cmath>
#include <random>

#include "doctest.h"
#include "fermatlab/cyclo.hpp"
#include "fermatlab/errors.hpp"
#include "fermatlab/linalg.hpp"
#include "fermatlab/multipoly.hpp"
#include "fermatlab/projective_map.hpp"
#include "fermatlab/unipoly.hpp"
#include "random_poly.hpp"

using namespace fermatlab;
using fermatlab::testing::random_cyclo;
using fermatlab::testing::random_nonzero_cyclo;
using fermatlab::testing::random_poly;

namespace {

MultiPoly z(int nvars, int i) { return MultiPoly::variable(nvars, i); }
MultiPoly c(int nvars, long v) { return MultiPoly::constant(nvars, CycloNumber(v)); }

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<long long>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<long long>{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<long long>{1, -1, 1});
  CHECK(cyclotomic_polynomial(14) == std::vector<long long>{1, -1, 1, -1, 1, -1, 1});
  for (int n = 1; n <= 40; ++n) CHECK(static_cast<int>(cyclotomic_polynomial(n).size()) - 1 == euler_phi(n));
}

TEST_CASE("cyclo_arith examples") {
  const CycloNumber i = CycloNumber::zeta(4);
  CHECK((CycloNumber::one(4) + i) * (CycloNumber::one(4) - i) == CycloNumber::rational(4, 2));
  CHECK(CycloNumber::zeta(14).pow(7) == CycloNumber::rational(14, -1));
  CHECK(CycloNumber(Rational(3, 7)) + CycloNumber(Rational(4, 7)) == CycloNumber(1L));
  CHECK_THROWS_AS(CycloNumber::one(4) / CycloNumber::zero(4), DomainError);
  CHECK_THROWS_AS(CycloNumber::zero(8).inverse(), DomainError);
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(7);
  for (int order : {1, 3, 4, 8, 14}) {
    CHECK(CycloNumber::zeta(order).pow(order).is_one());
    if (order % 2 == 0) CHECK(CycloNumber::zeta(order).pow(order / 2) == CycloNumber::rational(order, -1));
    for (int trial = 0; trial < 200; ++trial) {
      const CycloNumber a = random_nonzero_cyclo(rng, order);
      CHECK((a * a.inverse()).is_one());
      const CycloNumber b = random_cyclo(rng, order);
      const CycloNumber d = random_cyclo(rng, order);
      CHECK(a * (b + d) == a * b + a * d);
      CHECK((a * b) * d == a * (b * d));
    }
  }
}

TEST_CASE("embedding and mixed conductors") {
  // zeta_4 = zeta_8^2
  CHECK(CycloNumber::zeta(4).embed(8) == CycloNumber::zeta(8).pow(2));
  CHECK(CycloNumber::zeta(8) * CycloNumber(2L) == CycloNumber::zeta(8) + CycloNumber::zeta(8));
  CHECK_THROWS_AS(CycloNumber::zeta(3) + CycloNumber::zeta(4), DomainError);
  CHECK(CycloNumber::zeta(3) + CycloNumber::zeta(6).pow(2) == CycloNumber::zeta(3) * CycloNumber(2L));
}

TEST_CASE("coefficient text") {
  CHECK(CycloNumber::parse("3/7", 4) == CycloNumber::rational(4, Rational(3, 7)));
  CHECK(CycloNumber::parse("z14^3", 14) == CycloNumber::zeta(14, 3));
  CHECK(CycloNumber::parse("-z4", 4) == -CycloNumber::zeta(4));
  CHECK(CycloNumber::parse("1/2+3*z8^2", 8) == CycloNumber(Rational(1, 2)) + CycloNumber(3L) * CycloNumber::zeta(4).embed(8));
  CHECK(CycloNumber::parse("z4", 8) == CycloNumber::zeta(8, 2));
  CHECK(CycloNumber::parse("2/4", 1).to_string() == "1/2");
  CHECK(CycloNumber::parse("1-1/3*z14^5+z14", 14).to_string() == "1+z14-1/3*z14^5");
  CHECK(CycloNumber::parse("-z4^2", 4).to_string() == "1");
  CHECK_THROWS_AS(CycloNumber::parse("0.5", 4), ParseError);
  CHECK_THROWS_AS(CycloNumber::parse("1e3", 4), ParseError);
  CHECK_THROWS_AS(CycloNumber::parse("z3", 4), ParseError);
  CHECK_THROWS_AS(CycloNumber::parse("1/0", 4), ParseError);
  CHECK_THROWS_AS(CycloNumber::parse("", 4), ParseError);

  std::mt19937_64 rng(11);
  for (int order : {1, 4, 9, 14}) {
    for (int t = 0; t < 50; ++t) {
      const CycloNumber a = random_cyclo(rng, order);
      CHECK(CycloNumber::parse(a.to_string(), order) == a);
    }
  }
}

TEST_CASE("zero polynomial degree sentinel") {
  CHECK(MultiPoly(2).total_degree() == MultiPoly::kZeroDegree);
  CHECK(c(2, 5).total_degree() == 0);
  CHECK(MultiPoly::kZeroDegree < 0);
  CHECK((z(1, 0) - z(1, 0)).is_zero());
}

TEST_CASE("poly_diff examples") {
  const MultiPoly x = z(1, 0);
  CHECK(poly_diff(x.pow(3), DiffWord::parse("11")) == c(1, 6) * x);
  CHECK(poly_diff(z(2, 0) * z(2, 1), DiffWord::parse("12")) == c(2, 1));
  CHECK(poly_diff(z(2, 1).pow(2), DiffWord::parse("1")).is_zero());
  CHECK(DiffWord::parse("21") == DiffWord::parse("12"));
}

TEST_CASE("partial derivatives commute") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const MultiPoly f = random_poly(rng, 2, 5, 6);
    CHECK(f.derivative(0).derivative(1) == f.derivative(1).derivative(0));
    CHECK(f.diff(DiffWord({1, 2})) == f.diff(DiffWord({2, 1})));
  }
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const MultiPoly a = random_poly(rng, 2, 3, 4);
    const MultiPoly b = random_poly(rng, 2, 3, 4);
    const MultiPoly d = random_poly(rng, 2, 3, 4);
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    CHECK(a * b == b * a);
    if (!b.is_zero()) {
      auto q = (a * b).divide_exact(b);
      REQUIRE(q);
      CHECK(*q == a);
    }
  }
  CHECK_FALSE((z(1, 0) + c(1, 1)).divide_exact(z(1, 0)));
}

TEST_CASE("poly_eval examples") {
  const auto i4 = std::polar(1.0, 2 * M_PI / 4);
  auto r1 = poly_eval(z(2, 0) + z(2, 1), ComplexPoint({1.0, 2.0}), i4);
  CHECK(std::abs(r1.value - std::complex<double>(3, 0)) <= r1.error_bound + 1e-15);
  const MultiPoly zeta_z = MultiPoly::monomial({1}, CycloNumber::zeta(4));
  auto r2 = poly_eval(zeta_z, ComplexPoint({1.0}), i4);
  CHECK(std::abs(r2.value - std::complex<double>(0, 1)) <= r2.error_bound + 1e-15);
  auto r3 = poly_eval(z(1, 0).pow(9) - c(1, 1), ComplexPoint({1.0}), i4);
  CHECK(std::abs(r3.value) <= r3.error_bound + 1e-15);
  CHECK_THROWS_AS(poly_eval(zeta_z, ComplexPoint({1.0}), {0.0, 1.001}), DomainError);
  CHECK_THROWS_AS(ComplexPoint({std::complex<double>(NAN, 0)}), PreconditionError);
}

TEST_CASE("evaluation is a ring homomorphism up to rounding") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const auto zeta = std::polar(1.0, 2 * M_PI / 4);
  for (int t = 0; t < 50; ++t) {
    const MultiPoly f = random_poly(rng, 2, 4, 5);
    const MultiPoly g = random_poly(rng, 2, 4, 5);
    ComplexPoint pt({{u(rng), u(rng)}, {u(rng), u(rng)}});
    const auto ef = poly_eval(f, pt, zeta);
    const auto eg = poly_eval(g, pt, zeta);
    const auto efg = poly_eval(f * g, pt, zeta);
    const double tol = efg.error_bound + ef.error_bound * std::abs(eg.value) +
                       eg.error_bound * std::abs(ef.value) + ef.error_bound * eg.error_bound;
    CHECK(std::abs(efg.value - ef.value * eg.value) <= tol);
    // NumericPoly agrees with the bounded evaluation.
    CHECK(std::abs(NumericPoly(f)(pt.coords()) - ef.value) <= 2 * ef.error_bound + 1e-14);
  }
}

TEST_CASE("exact composition and evaluation") {
  // Q(w0, w1) = w0^2 + 3 w0 w1 composed with (1 + z, z^2)
  MultiPoly q(2);
  q.add_term({2, 0}, CycloNumber(1L));
  q.add_term({1, 1}, CycloNumber(3L));
  const MultiPoly x = z(1, 0);
  std::vector<MultiPoly> subs{c(1, 1) + x, x * x};
  const MultiPoly composed = q.compose(subs);
  CHECK(composed == (c(1, 1) + x).pow(2) + c(1, 3) * (c(1, 1) + x) * x * x);
  std::vector<CycloNumber> pt{CycloNumber(Rational(2, 3))};
  const CycloNumber at = composed.eval(pt);
  const Rational t(2, 3);
  CHECK(at == CycloNumber(Rational((1 + t) * (1 + t) + 3 * (1 + t) * t * t)));
}

TEST_CASE("univariate gcd and squarefree decomposition") {
  const MultiPoly x = z(1, 0);
  const UniPoly a = UniPoly::from_multipoly((x - c(1, 1)).pow(2) * (x + c(1, 2)));
  const UniPoly b = UniPoly::from_multipoly((x - c(1, 1)) * (x + c(1, 5)));
  CHECK(gcd(a, b) == UniPoly::from_multipoly(x - c(1, 1)));

  const UniPoly f = UniPoly::from_multipoly(c(1, 7) * x.pow(3) * (x - c(1, 1)).pow(2) * (x * x + c(1, 1)));
  auto parts = squarefree_decomposition(f);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].second == 1);
  CHECK(parts[0].first == UniPoly::from_multipoly(x * x + c(1, 1)));
  CHECK(parts[1].second == 2);
  CHECK(parts[1].first == UniPoly::from_multipoly(x - c(1, 1)));
  CHECK(parts[2].second == 3);
  CHECK(parts[2].first == UniPoly::from_multipoly(x));
  CHECK(squarefree_decomposition(UniPoly::from_multipoly(c(1, 4))).empty());
}

TEST_CASE("field linear algebra") {
  FieldMatrix m{{CycloNumber(1L), CycloNumber(0L), CycloNumber(2L)},
                {CycloNumber(0L), CycloNumber(1L), CycloNumber(3L)}};
  CHECK(rank(m) == 2);
  auto k = kernel_basis(m, 3);
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == CycloNumber(2L));
  CHECK(k[0][1] == CycloNumber(3L));
  CHECK(k[0][2] == CycloNumber(-1L));
  FieldMatrix sq{{CycloNumber(2L), CycloNumber(1L)}, {CycloNumber(4L), CycloNumber(3L)}};
  CHECK(determinant(sq) == CycloNumber(2L));
}

TEST_CASE("polynomial determinants agree across algorithms") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> zero(0, 3);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    PolyMatrix m(n);
    for (auto& row : m)
      for (std::size_t j = 0; j < n; ++j) row.push_back(zero(rng) == 0 ? MultiPoly(2) : random_poly(rng, 2, 2, 3));
    const MultiPoly a = determinant_cofactor(m);
    CHECK(a == determinant_bareiss(m));
    // Evaluation commutes with the determinant.
    std::vector<CycloNumber> pt{CycloNumber(3L), CycloNumber(-2L)};
    CHECK(a.eval(pt) == determinant(evaluate(m, pt)));
  }
}

TEST_CASE("generic_rank examples") {
  auto map = [](std::vector<MultiPoly> comps) { return ProjectiveMap::make(std::move(comps)); };
  CHECK(map({c(2, 1), z(2, 0), z(2, 1)}).generic_rank() == 2);
  CHECK(map({c(2, 1), z(2, 0), z(2, 0).pow(2)}).generic_rank() == 1);
  // Oracle: chart Jacobian rows (1,0), (0,1), (z2,z1) at (2,3) have rank 2.
  const auto f = map({c(2, 1), z(2, 0), z(2, 1), z(2, 0) * z(2, 1)});
  CHECK(f.generic_rank() == 2);
  CHECK(f.rank_info().method == RankInfo::Method::both);
  CHECK(f.is_maximal_rank());
  CHECK(map({c(1, 1), c(1, 2)}).generic_rank() == 0);
}

TEST_CASE("randomized rank beyond the symbolic cap") {
  // n = 5 > 4, so only the randomized path runs.
  std::vector<MultiPoly> comps{c(2, 1), z(2, 0), z(2, 1), z(2, 0).pow(2), z(2, 1).pow(2), z(2, 0) * z(2, 1)};
  const auto f = ProjectiveMap::make(comps);
  CHECK(f.generic_rank() == 2);
  CHECK(f.rank_info().method == RankInfo::Method::randomized);
  CHECK(f.rank_info().failure_bound == 0);
  // A curve in CP^5 parameterized by z1 + z2 has rank 1 with a tiny failure bound.
  const MultiPoly s = z(2, 0) + z(2, 1);
  const auto g = ProjectiveMap::make({c(2, 1), s, s.pow(2), s.pow(3), s.pow(4), s.pow(5)});
  CHECK(g.generic_rank() == 1);
  CHECK(g.rank_info().failure_bound > 0);
  CHECK(g.rank_info().failure_bound < 1e-9);
}

TEST_CASE("generic rank is invariant under linear changes of variables") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> entry(-4, 4);
  for (int t = 0; t < 10; ++t) {
    std::vector<MultiPoly> comps{c(2, 1), random_poly(rng, 2, 2, 3), random_poly(rng, 2, 2, 3)};
    if (t % 2 == 0) {
      const MultiPoly s = z(2, 0) - c(2, 2) * z(2, 1);
      comps = {c(2, 1), s, s.pow(2) + s};
    }
    long a, b, d, e;
    do {
      a = entry(rng), b = entry(rng), d = entry(rng), e = entry(rng);
    } while (a * e - b * d == 0);
    std::vector<MultiPoly> change{c(2, a) * z(2, 0) + c(2, b) * z(2, 1), c(2, d) * z(2, 0) + c(2, e) * z(2, 1)};
    std::vector<MultiPoly> moved;
    for (const auto& f : comps) moved.push_back(f.compose(change));
    CHECK(generic_rank(comps).rank == generic_rank(moved).rank);
  }
}

TEST_CASE("reduced representation check") {
  const MultiPoly x = z(1, 0);
  CHECK(passes_coprimality_check(std::vector<MultiPoly>{c(1, 1), x}));
  CHECK_FALSE(passes_coprimality_check(std::vector<MultiPoly>{x, x * x}));
  CHECK_FALSE(passes_coprimality_check(std::vector<MultiPoly>{x, -x, MultiPoly(1)}));
  CHECK_THROWS_AS(ProjectiveMap::make({x, x * x}), PreconditionError);
  CHECK_THROWS_AS(ProjectiveMap::make({MultiPoly(1), MultiPoly(1)}), PreconditionError);
  CHECK_THROWS_AS(ProjectiveMap::make({x}), PreconditionError);
  const MultiPoly u = z(2, 0);
  const MultiPoly v = z(2, 1);
  CHECK(passes_coprimality_check(std::vector<MultiPoly>{u, v}));
  CHECK_FALSE(passes_coprimality_check(std::vector<MultiPoly>{u * (u + v), v * (u + v)}));
}
