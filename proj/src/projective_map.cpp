#include "fermatlab/projective_map.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fermatlab/errors.hpp"
#include "fermatlab/linalg.hpp"
#include "fermatlab/unipoly.hpp"

namespace fermatlab {

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Rows f_k * grad f_i - f_i * grad f_k for i != k, where f_k is the first
// nonzero component: the Jacobian of the affine chart times f_k^2.
PolyMatrix chart_jacobian(std::span<const MultiPoly> f) {
  const auto k = static_cast<std::size_t>(
      std::find_if(f.begin(), f.end(), [](const MultiPoly& c) { return !c.is_zero(); }) - f.begin());
  const int p = f.front().nvars();
  PolyMatrix jac;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i == k) continue;
    std::vector<MultiPoly> row;
    for (int j = 0; j < p; ++j) row.push_back(f[k] * f[i].derivative(j) - f[i] * f[k].derivative(j));
    jac.push_back(std::move(row));
  }
  return jac;
}

int symbolic_rank(const PolyMatrix& jac, int p) {
  const auto rows = jac.size();
  for (std::size_t r = std::min<std::size_t>(rows, static_cast<std::size_t>(p)); r > 0; --r) {
    for (const auto& rs : subsets(rows, r)) {
      for (const auto& cs : subsets(static_cast<std::size_t>(p), r)) {
        PolyMatrix minor(r, std::vector<MultiPoly>());
        for (std::size_t a = 0; a < r; ++a)
          for (std::size_t b = 0; b < r; ++b) minor[a].push_back(jac[rs[a]][cs[b]]);
        if (!determinant_cofactor(minor).is_zero()) return static_cast<int>(r);
      }
    }
  }
  return 0;
}

}  // namespace

std::string to_string(RankInfo::Method m) {
  switch (m) {
    case RankInfo::Method::symbolic:
      return "symbolic";
    case RankInfo::Method::randomized:
      return "randomized";
    case RankInfo::Method::both:
      return "symbolic+randomized";
  }
  return "unknown";
}

bool passes_coprimality_check(std::span<const MultiPoly> components, std::uint64_t seed) {
  std::vector<const MultiPoly*> nonzero;
  for (const auto& c : components) {
    if (c.is_zero()) continue;
    if (c.is_constant()) return true;
    nonzero.push_back(&c);
  }
  if (nonzero.empty()) return false;
  const int p = nonzero.front()->nvars();
  std::mt19937_64 rng(seed ^ 0xc0b1'7e57ULL);
  std::uniform_int_distribution<long> coord(-50, 50);
  for (int line = 0; line < kCoprimalityLines; ++line) {
    std::vector<MultiPoly> subs;
    bool moving = false;
    for (int v = 0; v < p; ++v) {
      const long base = coord(rng);
      long dir = coord(rng);
      if (v == p - 1 && !moving && dir == 0) dir = 1;
      moving = moving || dir != 0;
      MultiPoly s = MultiPoly::constant(1, CycloNumber(base));
      s += MultiPoly::monomial({1}, CycloNumber(dir));
      subs.push_back(std::move(s));
    }
    UniPoly g;
    for (const MultiPoly* c : nonzero) {
      g = gcd(g, UniPoly::from_multipoly(c->compose(subs)));
      if (g.degree() == 0) break;
    }
    if (g.degree() > 0) return false;
  }
  return true;
}

RankInfo generic_rank(std::span<const MultiPoly> f, std::uint64_t seed) {
  if (f.size() < 2) throw PreconditionError("a projective map needs at least two components");
  const int p = f.front().nvars();
  const PolyMatrix jac = chart_jacobian(f);
  const int n = static_cast<int>(jac.size());

  // Randomized: exact rank of the Jacobian at grid points.
  int degree = 0;
  for (const auto& c : f) degree = std::max(degree, c.total_degree());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> grid(0, kRankGrid - 1);
  int sampled = 0;
  for (int s = 0; s < kRankSamplePoints; ++s) {
    std::vector<CycloNumber> point;
    for (int v = 0; v < p; ++v) point.emplace_back(static_cast<long>(grid(rng)));
    sampled = std::max(sampled, static_cast<int>(rank(evaluate(jac, point))));
  }
  RankInfo info;
  info.rank = sampled;
  info.method = RankInfo::Method::randomized;
  if (sampled < std::min(n, p)) {
    // A nonzero (rank+1)-minor has degree at most (rank+1)(2 deg - 1).
    const double minor_degree = (sampled + 1.0) * std::max(2.0 * degree - 1.0, 0.0);
    info.failure_bound = std::pow(std::min(1.0, minor_degree / static_cast<double>(kRankGrid)), kRankSamplePoints);
  }

  if (n <= kSymbolicRankCap && p <= kSymbolicRankCap) {
    const int exact = symbolic_rank(jac, p);
    if (exact != sampled)
      throw InconsistencyError("generic rank: symbolic minors give " + std::to_string(exact) +
                               ", randomized evaluation gives " + std::to_string(sampled));
    info.method = RankInfo::Method::both;
    info.failure_bound = 0;
  }
  return info;
}

RankInfo generic_rank(const ProjectiveMap& f, std::uint64_t seed) { return generic_rank(f.components(), seed); }

ProjectiveMap::ProjectiveMap(std::vector<MultiPoly> components, RankInfo rank)
    : p_(components.front().nvars()), components_(std::move(components)), rank_(rank) {}

ProjectiveMap ProjectiveMap::make(std::vector<MultiPoly> components) {
  if (components.size() < 2) throw PreconditionError("a projective map needs at least two components");
  const int p = components.front().nvars();
  if (p < 1) throw PreconditionError("domain dimension p must be at least 1");
  for (const auto& c : components)
    if (c.nvars() != p) throw PreconditionError("components disagree on the number of variables");
  if (std::all_of(components.begin(), components.end(), [](const MultiPoly& c) { return c.is_zero(); }))
    throw PreconditionError("all components vanish identically");
  if (!passes_coprimality_check(components))
    throw PreconditionError("components share a common factor (not a reduced representation)");
  RankInfo r = fermatlab::generic_rank(std::span<const MultiPoly>(components), kDefaultRankSeed);
  return ProjectiveMap(std::move(components), r);
}

bool ProjectiveMap::is_maximal_rank() const noexcept { return rank_.rank == std::min(p_, n()); }

int ProjectiveMap::field_order() const {
  int order = 1;
  for (const auto& c : components_) order = std::max(order, c.field_order());
  return order;
}

std::string ProjectiveMap::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i > 0) s += " : ";
    s += components_[i].to_string();
  }
  return s + "]";
}

}  // namespace fermatlab
