#include "fermatlab/fermat.hpp"

#include <algorithm>
#include <set>

#include "fermatlab/errors.hpp"
#include "fermatlab/linalg.hpp"
#include "fermatlab/nevanlinna.hpp"
#include "fermatlab/unipoly.hpp"

namespace fermatlab::fermat {

std::string to_string(FermatKind k) { return k == FermatKind::compact ? "compact" : "logarithmic"; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_applicable:
      return "not_applicable";
    case Verdict::error:
      return "error";
  }
  return "error";
}

void FermatInstance::validate() const {
  if (n < 2) throw PreconditionError("Fermat instances need n >= 2");
  if (d < 1) throw PreconditionError("Fermat instances need d >= 1");
}

int FermatInstance::degree_threshold(int p) const {
  return (n + 1) * (kind == FermatKind::compact ? kappa(p, n - 1) : kappa(p, n));
}

bool FermatInstance::hypothesis_holds(int p) const { return d > degree_threshold(p); }

int FermatInstance::dimension_bound() const { return kind == FermatKind::compact ? (n - 1) / 2 : n / 2; }

namespace {

MultiPoly power_sum(const std::vector<MultiPoly>& comps, int d) {
  MultiPoly sum(comps.front().nvars());
  for (const auto& c : comps) sum += c.pow(static_cast<unsigned>(d));
  return sum;
}

void require_degree(int d) {
  if (d < 1) throw PreconditionError("degree d must be >= 1");
}

std::optional<CycloNumber> proportionality(const MultiPoly& fj, const MultiPoly& fi) {
  if (fj.size() != fi.size() || fi.is_zero()) return std::nullopt;
  const auto& [e, ci] = *fi.terms().begin();
  const CycloNumber cj = fj.coeff(e);
  if (cj.is_zero()) return std::nullopt;
  CycloNumber ratio = cj / ci;
  if (!(fi * ratio == fj)) return std::nullopt;
  return ratio;
}

// Partition over the listed component indices only.
RatioPartition partition_indices(const std::vector<MultiPoly>& comps, const std::vector<int>& indices) {
  RatioPartition out;
  out.representative.assign(comps.size(), -1);
  out.ratio.assign(comps.size(), CycloNumber(0L));
  for (const int i : indices) {
    const auto ui = static_cast<std::size_t>(i);
    if (out.representative[ui] >= 0) continue;
    out.representative[ui] = i;
    out.ratio[ui] = CycloNumber(1L);
    std::vector<int> cls{i};
    for (const int j : indices) {
      const auto uj = static_cast<std::size_t>(j);
      if (j <= i || out.representative[uj] >= 0) continue;
      if (auto c = proportionality(comps[uj], comps[ui])) {
        out.representative[uj] = i;
        out.ratio[uj] = *c;
        cls.push_back(j);
      }
    }
    out.classes.push_back(std::move(cls));
  }
  return out;
}

}  // namespace

PowerMap power_map(const ProjectiveMap& f, int d) {
  require_degree(d);
  std::vector<MultiPoly> comps;
  for (const auto& c : f.components()) comps.push_back(c.pow(static_cast<unsigned>(d)));
  PowerMap out{ProjectiveMap::make(std::move(comps)), d, {}, false};
  if (f.p() != 1) return out;
  for (const auto& g : out.map.components()) {
    int smallest = nevanlinna::kInfinity;
    if (!g.is_constant()) {
      for (const auto& [factor, mult] : squarefree_decomposition(UniPoly::from_multipoly(g))) {
        if (mult % d != 0)
          throw InconsistencyError("pullback multiplicity " + std::to_string(mult) + " is not a multiple of d=" +
                                   std::to_string(d));
        smallest = std::min(smallest, mult);
      }
    }
    out.min_multiplicities.push_back(smallest);
  }
  out.multiplicities_verified = true;
  return out;
}

bool fermat_membership(const ProjectiveMap& f, int d) {
  require_degree(d);
  return power_sum(f.components(), d).is_zero();
}

std::vector<std::vector<CycloNumber>> find_power_relations(const ProjectiveMap& f, int d) {
  require_degree(d);
  std::vector<MultiPoly> powers;
  for (const auto& c : f.components()) powers.push_back(c.pow(static_cast<unsigned>(d)));
  std::set<Exponent> monomials;
  for (const auto& g : powers)
    for (const auto& [e, c] : g.terms()) monomials.insert(e);
  FieldMatrix m;
  for (const auto& e : monomials) {
    std::vector<CycloNumber> row;
    for (const auto& g : powers) row.push_back(g.coeff(e));
    m.push_back(std::move(row));
  }
  return kernel_basis(m, powers.size());
}

RatioPartition ratio_partition(const ProjectiveMap& f) {
  std::vector<int> indices;
  for (std::size_t i = 0; i < f.components().size(); ++i) {
    if (f[i].is_zero()) throw PreconditionError("component " + std::to_string(i) + " vanishes identically");
    indices.push_back(static_cast<int>(i));
  }
  return partition_indices(f.components(), indices);
}

std::string LinearEquation::to_string() const {
  const std::string lhs = "w" + std::to_string(j) + " = ";
  if (rep < 0 || ratio.is_zero()) return lhs + "0";
  const std::string w = "w" + std::to_string(rep);
  if (ratio.is_one()) return lhs + w;
  if ((-ratio).is_one()) return lhs + "-" + w;
  return lhs + "(" + ratio.to_string() + ")*" + w;
}

std::optional<CycloNumber> dth_root(const CycloNumber& x, int d, int field_order) {
  require_degree(d);
  if (field_order % x.order() != 0) throw DomainError("value does not lie in Q(zeta_" + std::to_string(field_order) + ")");
  if (x.is_zero()) return CycloNumber::zero(field_order);
  auto rational_root = [d](const Rational& q) -> std::optional<Rational> {
    mpz_class num = abs(q.get_num());
    mpz_class rn;
    mpz_class rd;
    if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(d)) == 0) return std::nullopt;
    if (mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), static_cast<unsigned long>(d)) == 0) return std::nullopt;
    Rational r(rn, rd);
    r.canonicalize();
    if (sgn(q) > 0) return r;
    if (d % 2 == 1) return Rational(-r);
    return std::nullopt;
  };
  const CycloNumber target = x.embed(field_order);
  for (int k = 0; k < field_order; ++k) {
    const CycloNumber w = target * CycloNumber::zeta(field_order, -static_cast<long>(k) * d);
    if (!w.is_rational()) continue;
    if (auto q = rational_root(w.rational_value())) {
      CycloNumber y = CycloNumber::zeta(field_order, k) * CycloNumber::rational(field_order, *q);
      if (!(y.pow(d) == target)) throw InconsistencyError("d-th root check failed");
      return y;
    }
  }
  return std::nullopt;
}

LogarithmicExtension logarithmic_extend(const ProjectiveMap& f, int d, int field_order) {
  require_degree(d);
  const int order = field_order == 0 ? f.field_order() : field_order;
  if (order % f.field_order() != 0)
    throw PreconditionError("map coefficients do not lie in Q(zeta_" + std::to_string(order) + ")");
  const MultiPoly sum = power_sum(f.components(), d);
  if (sum.is_zero()) throw PreconditionError("power sum vanishes identically: the map lies in F instead of avoiding it");
  if (!sum.is_constant())
    throw PreconditionError("power sum " + sum.to_string() + " is nonconstant: the map meets F");
  const CycloNumber c = sum.terms().begin()->second;
  const auto mu = dth_root(-c, d, order);
  if (!mu)
    throw DomainError("-(" + c.to_string() + ") has no " + std::to_string(d) + "-th root of the form zeta^k*q in Q(zeta_" +
                      std::to_string(order) + ")");
  std::vector<MultiPoly> comps = f.components();
  comps.push_back(MultiPoly::constant(f.p(), *mu));
  if (!power_sum(comps, d).is_zero()) throw InconsistencyError("extended power sum does not vanish");
  return {ProjectiveMap::make(std::move(comps)), c, *mu};
}

SubspaceReport degeneracy_subspace(const ProjectiveMap& f, const FermatInstance& instance, int field_order) {
  instance.validate();
  if (f.n() != instance.n)
    throw PreconditionError("instance has n=" + std::to_string(instance.n) + " but the map targets CP^" +
                            std::to_string(f.n()));
  SubspaceReport report;
  report.bound = instance.dimension_bound();
  report.generic_rank = f.generic_rank();

  std::vector<MultiPoly> comps = f.components();
  if (instance.kind == FermatKind::compact) {
    if (!fermat_membership(f, instance.d)) {
      report.diagnostic = "membership false: the power sum of degree " + std::to_string(instance.d) +
                          " does not vanish, so the map does not land in F";
      return report;
    }
  } else {
    try {
      const auto ext = logarithmic_extend(f, instance.d, field_order);
      comps = ext.map.components();
      report.appended_component = ext.mu;
    } catch (const PreconditionError& e) {
      report.diagnostic = e.what();
      return report;
    } catch (const DomainError& e) {
      report.diagnostic = e.what();
      return report;
    }
  }
  if (!f.is_maximal_rank()) {
    report.diagnostic = "generic rank " + std::to_string(report.generic_rank) + " is below min(p, n) = " +
                        std::to_string(std::min(f.p(), f.n()));
    return report;
  }
  if (!instance.hypothesis_holds(f.p())) {
    report.diagnostic = "degree hypothesis fails: d=" + std::to_string(instance.d) + " <= " +
                        std::to_string(instance.degree_threshold(f.p()));
    return report;
  }

  // Identically zero components are cut out by omega_j = 0; the rest are partitioned.
  std::vector<int> nonzero;
  std::vector<int> zero;
  for (std::size_t i = 0; i < comps.size(); ++i) (comps[i].is_zero() ? zero : nonzero).push_back(static_cast<int>(i));
  if (!zero.empty()) {
    std::string list;
    for (int j : zero) list += (list.empty() ? "" : ",") + std::to_string(j);
    report.notes.push_back("components {" + list + "} vanish identically; reduced to CP^" +
                           std::to_string(nonzero.size() - 1) + " and re-embedded");
  }
  RatioPartition partition = partition_indices(comps, nonzero);

  const int appended = instance.kind == FermatKind::logarithmic ? instance.n + 1 : -1;
  for (int j : zero)
    if (j != appended) report.equations.push_back({j, -1, CycloNumber(0L)});
  for (const auto& cls : partition.classes) {
    CycloNumber b(0L);
    for (const int j : cls) b += partition.ratio[static_cast<std::size_t>(j)].pow(instance.d);
    report.class_power_sums.push_back(b);
    for (std::size_t k = 1; k < cls.size(); ++k) {
      const int j = cls[k];
      if (j == appended) {
        const LinearEquation removed{j, cls[0], partition.ratio[static_cast<std::size_t>(j)]};
        report.notes.push_back("removed " + removed.to_string());
        continue;
      }
      report.equations.push_back({j, cls[0], partition.ratio[static_cast<std::size_t>(j)]});
    }
  }
  std::sort(report.equations.begin(), report.equations.end(),
            [](const LinearEquation& a, const LinearEquation& b) { return a.j < b.j; });

  FieldMatrix m;
  for (const auto& eq : report.equations) {
    std::vector<CycloNumber> row(static_cast<std::size_t>(instance.n + 1), CycloNumber(0L));
    row[static_cast<std::size_t>(eq.j)] = CycloNumber(1L);
    if (eq.rep >= 0) row[static_cast<std::size_t>(eq.rep)] -= eq.ratio;
    m.push_back(std::move(row));
  }
  report.dimension = instance.n - static_cast<int>(m.empty() ? 0 : rank(m));
  report.partition = std::move(partition);
  report.class_sums_vanish = std::all_of(report.class_power_sums.begin(), report.class_power_sums.end(),
                                         [](const CycloNumber& b) { return b.is_zero(); });
  report.rank_within_dimension = report.generic_rank <= report.dimension;

  if (!report.class_sums_vanish) {
    report.verdict = Verdict::fail;
    report.diagnostic = "a class power sum b_r is nonzero";
  } else if (report.dimension <= report.bound) {
    report.verdict = Verdict::pass;
    report.diagnostic = "dimension " + std::to_string(report.dimension) + " <= " + std::to_string(report.bound);
  } else {
    report.verdict = Verdict::fail;
    report.diagnostic = "dimension " + std::to_string(report.dimension) + " exceeds " + std::to_string(report.bound);
  }
  return report;
}

CorollaryReport corollary_verdict(int p, int n, int d, FermatKind kind) {
  if (p < 1) throw PreconditionError("corollary needs p >= 1");
  FermatInstance inst{n, d, kind};
  inst.validate();
  CorollaryReport r;
  r.p = p;
  r.n = n;
  r.d = d;
  r.kind = kind;
  r.kappa_value = kind == FermatKind::compact ? kappa(p, n - 1) : kappa(p, n);
  r.degree_threshold = (n + 1) * r.kappa_value;
  r.degree_condition = d > r.degree_threshold;
  r.dimension_threshold = inst.dimension_bound();
  r.dimension_condition = p > r.dimension_threshold;
  r.nonexistence = r.degree_condition && r.dimension_condition;
  return r;
}

CorollaryReport corollary_verdict(const ProjectiveMap& f, int d, FermatKind kind, int field_order) {
  CorollaryReport r = corollary_verdict(f.p(), f.n(), d, kind);
  const SubspaceReport sub = degeneracy_subspace(f, {f.n(), d, kind}, field_order);
  if (sub.verdict == Verdict::pass) {
    r.map_rank = f.generic_rank();
    r.subspace_dimension = sub.dimension;
    r.rank_consistent = *r.map_rank <= *r.subspace_dimension;
  }
  return r;
}

ProofTrace proof_trace(int gamma, int s, int d, int n, int p) {
  if (n < 1 || p < 1) throw PreconditionError("proof_trace needs n >= 1 and p >= 1");
  if (gamma < 2 || gamma > n + 1) throw PreconditionError("proof_trace needs 2 <= gamma <= n + 1");
  if (s < 1) throw PreconditionError("proof_trace needs s >= 1");
  require_degree(d);
  ProofTrace t;
  t.gamma = gamma;
  t.s = s;
  t.d = d;
  t.n = n;
  t.p = p;
  t.terminates_immediately = gamma == 2;
  t.d_i = std::max(gamma - s - 1, 1);
  t.lhs = Rational(gamma * (d - t.d_i), d);
  t.lhs.canonicalize();
  t.threshold = gamma - 1;
  t.contradiction = t.lhs > t.threshold;
  t.rank_lower_bound = std::max(p - (n + 1 - gamma), 1);
  t.wide_case = p + gamma > n + 1;
  t.gamma_d_i = gamma * t.d_i;
  t.chain_bound = (n + 1) * (n - p);
  t.chain_strict = t.gamma_d_i < t.chain_bound;
  return t;
}

}  // namespace fermatlab::fermat
