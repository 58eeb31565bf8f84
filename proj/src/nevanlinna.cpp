#include "fermatlab/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "fermatlab/errors.hpp"
#include "fermatlab/kappa.hpp"
#include "fermatlab/linalg.hpp"
#include "fermatlab/roots.hpp"
#include "fermatlab/unipoly.hpp"
#include "fermatlab/wronskian.hpp"

namespace fermatlab::nevanlinna {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Exponent unit_exponent(int nvars, int i) {
  Exponent e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

MultiPoly nonzero_pullback(const ProjectiveMap& f, const Divisor& d) {
  MultiPoly q = pullback(f, d);
  if (q.is_zero()) throw ContainmentError("the image of " + f.to_string() + " lies in {" + d.to_string() + " = 0}");
  return q;
}

void require_radius_above_one(double r, const char* what) {
  if (!(r > 1) || !std::isfinite(r)) throw PreconditionError(std::string(what) + " needs a finite radius r > 1");
}

struct NumericMap {
  explicit NumericMap(const ProjectiveMap& f) {
    for (const auto& c : f.components()) comps.emplace_back(c);
  }
  double max_abs(std::span<const std::complex<double>> z) const {
    double m = 0;
    for (const auto& c : comps) m = std::max(m, std::abs(c(z)));
    return m;
  }
  std::vector<NumericPoly> comps;
};

Integrand log_abs(const MultiPoly& q, double singular_tolerance) {
  return [poly = NumericPoly(q), singular_tolerance](std::span<const std::complex<double>> z) {
    const double v = std::abs(poly(z));
    return v < singular_tolerance ? kNaN : std::log(v);
  };
}

bool counts_exactly(const ProjectiveMap& f) { return f.p() == 1; }

// N^[m](r) by the exact route for p = 1, Jensen otherwise (untruncated).
double counting_value(const ProjectiveMap& f, const Divisor& d, int truncation, double r, const QuadratureConfig& cfg,
                      double& error) {
  if (counts_exactly(f)) return counting_exact_1d(f, d, truncation)(r);
  const QuadratureResult q = counting_jensen(f, d, r, cfg);
  error = std::max(error, q.error);
  return q.value;
}

void require_hyperplanes(const ProjectiveMap& f, std::span<const Divisor> hyperplanes) {
  for (const auto& h : hyperplanes) {
    if (!h.is_hyperplane()) throw PreconditionError("expected a hyperplane, got degree " + std::to_string(h.degree()));
    if (h.n() != f.n()) throw PreconditionError("hyperplane lives in CP^" + std::to_string(h.n()) + ", map targets CP^" +
                                                std::to_string(f.n()));
  }
}

}  // namespace

Divisor Divisor::make(MultiPoly q) {
  if (q.is_zero()) throw PreconditionError("divisor polynomial is zero");
  if (q.nvars() < 2) throw PreconditionError("divisor needs at least 2 homogeneous coordinates");
  if (!q.is_homogeneous()) throw PreconditionError("divisor polynomial is not homogeneous: " + q.to_string());
  const int degree = q.total_degree();
  if (degree < 1) throw PreconditionError("divisor polynomial must have degree >= 1");
  return Divisor(std::move(q), degree);
}

Divisor Divisor::hyperplane(const std::vector<CycloNumber>& coeffs) {
  const int nvars = static_cast<int>(coeffs.size());
  MultiPoly q(nvars);
  for (int i = 0; i < nvars; ++i) q.add_term(unit_exponent(nvars, i), coeffs[static_cast<std::size_t>(i)]);
  return make(std::move(q));
}

std::vector<CycloNumber> Divisor::hyperplane_coeffs() const {
  if (!is_hyperplane()) throw PreconditionError("divisor is not a hyperplane");
  std::vector<CycloNumber> out;
  for (int i = 0; i <= n(); ++i) out.push_back(q_.coeff(unit_exponent(q_.nvars(), i)));
  return out;
}

MultiPoly pullback(const ProjectiveMap& f, const Divisor& d) {
  if (d.n() != f.n())
    throw PreconditionError("divisor lives in CP^" + std::to_string(d.n()) + ", map targets CP^" + std::to_string(f.n()));
  return d.poly().compose(f.components());
}

bool in_general_position(std::span<const Divisor> hyperplanes) {
  if (hyperplanes.empty()) return true;
  const int n = hyperplanes.front().n();
  FieldMatrix all;
  for (const auto& h : hyperplanes) {
    if (!h.is_hyperplane() || h.n() != n) throw PreconditionError("general position needs hyperplanes in one CP^n");
    all.push_back(h.hyperplane_coeffs());
  }
  const std::size_t q = all.size();
  const std::size_t k = std::min(q, static_cast<std::size_t>(n + 1));
  std::vector<bool> pick(q, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    FieldMatrix sub;
    for (std::size_t i = 0; i < q; ++i)
      if (pick[i]) sub.push_back(all[i]);
    if (rank(sub) != k) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

int ZeroDivisor1D::min_multiplicity() const {
  int m = kInfinity;
  for (const auto& z : zeros) m = std::min(m, z.multiplicity);
  return m;
}

int ZeroDivisor1D::total_multiplicity() const {
  int total = 0;
  for (const auto& z : zeros) total += z.multiplicity;
  return total;
}

ZeroDivisor1D zero_divisor_1d(const ProjectiveMap& f, const Divisor& d) {
  if (f.p() != 1) throw PreconditionError("exact zero divisors need p = 1");
  const UniPoly u = UniPoly::from_multipoly(nonzero_pullback(f, d));
  ZeroDivisor1D out;
  if (u.degree() <= 0) return out;
  for (const auto& [factor, mult] : squarefree_decomposition(u)) {
    for (const auto& root : isolate_roots(factor)) {
      out.zeros.push_back({{static_cast<double>(root.center.real()), static_cast<double>(root.center.imag())},
                           static_cast<double>(root.radius),
                           mult,
                           root.exact_zero});
    }
  }
  return out;
}

CountingFunction::CountingFunction(ZeroDivisor1D zeros, int truncation) : zeros_(std::move(zeros)), truncation_(truncation) {
  if (truncation < 1) throw PreconditionError("truncation level must be >= 1");
}

double CountingFunction::operator()(double r) const {
  if (!(r >= 1) || !std::isfinite(r)) throw PreconditionError("counting function needs r >= 1");
  // Breakpoints of the step function n^[m](t) on (1, r).
  std::vector<std::pair<double, int>> steps;
  int level = 0;
  for (const auto& z : zeros_.zeros) {
    const int w = std::min(truncation_, z.multiplicity);
    const double modulus = z.exact_origin ? 0.0 : std::abs(z.location);
    if (modulus <= 1) {
      level += w;
    } else if (modulus < r) {
      steps.emplace_back(modulus, w);
    }
  }
  std::sort(steps.begin(), steps.end());
  double total = 0;
  double t = 1;
  for (const auto& [edge, w] : steps) {
    total += level * (std::log(edge) - std::log(t));
    level += w;
    t = edge;
  }
  return total + level * (std::log(r) - std::log(t));
}

std::string CountingFunction::formula() const {
  int weight = 0;
  double shift = 0;
  for (const auto& z : zeros_.zeros) {
    const int w = std::min(truncation_, z.multiplicity);
    weight += w;
    const double modulus = z.exact_origin ? 0.0 : std::abs(z.location);
    if (modulus > 1) shift += w * std::log(modulus);
  }
  if (weight == 0) return "0";
  std::ostringstream out;
  out.precision(12);
  if (weight != 1) out << weight << "*";
  out << "log(r)";
  if (shift > 0) out << " - " << shift;
  return out.str();
}

CountingFunction counting_exact_1d(const ProjectiveMap& f, const Divisor& d, int truncation) {
  return CountingFunction(zero_divisor_1d(f, d), truncation);
}

QuadratureResult order_function(const ProjectiveMap& f, double r, const QuadratureConfig& cfg) {
  require_radius_above_one(r, "order_function");
  const NumericMap map(f);
  const double tol = cfg.singular_tolerance;
  return sphere_average(
      [&map, tol](std::span<const std::complex<double>> z) {
        const double m = map.max_abs(z);
        return m < tol ? kNaN : std::log(m);
      },
      f.p(), r, cfg);
}

QuadratureResult proximity(const ProjectiveMap& f, const Divisor& d, double r, const QuadratureConfig& cfg) {
  if (!(r > 0) || !std::isfinite(r)) throw PreconditionError("proximity needs a finite radius r > 0");
  const NumericPoly q(nonzero_pullback(f, d));
  const NumericMap map(f);
  const double log_norm = std::log(d.coefficient_norm());
  const int degree = d.degree();
  const double tol = cfg.singular_tolerance;
  return sphere_average(
      [&](std::span<const std::complex<double>> z) {
        const double qv = std::abs(q(z));
        const double m = map.max_abs(z);
        if (qv < tol || m < tol) return kNaN;
        return degree * std::log(m) + log_norm - std::log(qv);
      },
      f.p(), r, cfg);
}

QuadratureResult counting_jensen(const ProjectiveMap& f, const Divisor& d, double r, const QuadratureConfig& cfg) {
  require_radius_above_one(r, "counting_jensen");
  const MultiPoly q = nonzero_pullback(f, d);
  if (q.is_constant()) {
    QuadratureResult zero;
    zero.method = f.p() == 1 ? QuadratureMethod::trapezoid : QuadratureMethod::monte_carlo;
    return zero;
  }
  if (f.p() == 1) {
    const Integrand g = log_abs(q, cfg.singular_tolerance);
    const QuadratureResult outer = circle_average_adaptive(g, r, cfg);
    const QuadratureResult inner = circle_average_adaptive(g, 1, cfg);
    return {outer.value - inner.value,      outer.error + inner.error, QuadratureMethod::trapezoid,
            std::max(outer.nodes, inner.nodes), outer.rejected + inner.rejected, 0};
  }
  // Same direction u at both radii, so the sampled quantity is the difference itself.
  const NumericPoly poly(q);
  const double tol = cfg.singular_tolerance;
  std::vector<std::complex<double>> scaled;
  return sphere_average(
      [&](std::span<const std::complex<double>> u) {
        scaled.assign(u.begin(), u.end());
        for (auto& c : scaled) c *= r;
        const double inner = std::abs(poly(u));
        const double outer = std::abs(poly(scaled));
        if (inner < tol || outer < tol) return kNaN;
        return std::log(outer) - std::log(inner);
      },
      f.p(), 1, cfg);
}

void validate_radii(std::span<const double> radii) {
  if (radii.empty()) throw PreconditionError("radius grid is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 1) || !std::isfinite(radii[i])) throw PreconditionError("radii must be finite and > 1");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw PreconditionError("radii must be strictly increasing");
  }
}

FmtReport fmt_check(const ProjectiveMap& f, const Divisor& d, std::span<const double> radii, const QuadratureConfig& cfg,
                    double tolerance) {
  validate_radii(radii);
  const MultiPoly q = nonzero_pullback(f, d);
  FmtReport report;
  report.exact_counting = counts_exactly(f);
  std::optional<CountingFunction> exact;
  if (report.exact_counting) exact = counting_exact_1d(f, d);
  for (const double r : radii) {
    const QuadratureResult t = order_function(f, r, cfg);
    const QuadratureResult m = proximity(f, d, r, cfg);
    double n_value;
    double err = std::max(t.error, m.error);
    if (exact) {
      n_value = (*exact)(r);
    } else {
      const QuadratureResult jn = counting_jensen(f, d, r, cfg);
      n_value = jn.value;
      err = std::max(err, jn.error);
    }
    report.quadrature_error = std::max(report.quadrature_error, err);
    report.rows.push_back({r, t.value, m.value, n_value, m.value + n_value - d.degree() * t.value});
  }
  report.proximity_lower_bound = -std::log(static_cast<double>(d.poly().size()));
  report.counting_excess = -std::numeric_limits<double>::infinity();
  const double slop = tolerance + 3 * report.quadrature_error;
  report.proximity_bounded_below = true;
  for (const auto& row : report.rows) {
    report.residual_variation = std::max(report.residual_variation, std::abs(row.residual - report.rows.front().residual));
    report.counting_excess = std::max(report.counting_excess, row.counting - d.degree() * row.order);
    if (row.proximity < report.proximity_lower_bound - slop) report.proximity_bounded_below = false;
  }
  report.residual_bounded = report.residual_variation <= 10 * report.quadrature_error + tolerance;
  report.counting_inequality = report.counting_excess <= report.rows.front().residual - report.proximity_lower_bound +
                                                             report.residual_variation + slop;
  return report;
}

SmtReport smt_check(const ProjectiveMap& f, std::span<const Divisor> hyperplanes, std::span<const double> radii,
                    const QuadratureConfig& cfg, double tolerance) {
  validate_radii(radii);
  require_hyperplanes(f, hyperplanes);
  SmtReport report;
  report.q = static_cast<int>(hyperplanes.size());
  report.n = f.n();
  if (report.q < report.n + 2)
    throw PreconditionError("second main theorem needs q >= n + 2 hyperplanes, got " + std::to_string(report.q));
  if (!in_general_position(hyperplanes)) throw PreconditionError("hyperplanes are not in general position");
  if (!wronskian::is_linearly_independent(f.components()).independent)
    throw PreconditionError("map " + f.to_string() + " is linearly degenerate");
  report.rank = f.generic_rank();
  report.truncation = report.n + 1 - report.rank;
  report.exact_counting = counts_exactly(f);
  if (!report.exact_counting)
    report.caveat = "p >= 2: untruncated Jensen counting stands in for N^[" + std::to_string(report.truncation) + "]";

  std::vector<CountingFunction> exact;
  if (report.exact_counting)
    for (const auto& h : hyperplanes) exact.push_back(counting_exact_1d(f, h, report.truncation));

  double error = 0;
  for (const double r : radii) {
    const QuadratureResult t = order_function(f, r, cfg);
    error = std::max(error, t.error);
    SmtRow row{r, t.value, {}, 0};
    double sum = 0;
    for (std::size_t i = 0; i < hyperplanes.size(); ++i) {
      const double n_value = report.exact_counting ? exact[i](r) : counting_value(f, hyperplanes[i], kInfinity, r, cfg, error);
      row.counting.push_back(n_value);
      sum += n_value;
    }
    row.slack = sum - (report.q - report.n - 1) * t.value;
    report.rows.push_back(std::move(row));
  }

  double worst_fit = std::numeric_limits<double>::infinity();
  for (const auto& row : report.rows) {
    if (row.r > kSmtFitRadius && report.fit_rows > 0) break;
    worst_fit = std::min(worst_fit, row.slack);
    ++report.fit_rows;
  }
  report.fitted_constant = std::max(0.0, -worst_fit);
  const double slop = tolerance + 3 * error * report.q;
  report.passed = std::all_of(report.rows.begin(), report.rows.end(),
                              [&](const SmtRow& row) { return row.slack >= -report.fitted_constant - slop; });
  return report;
}

DefectEstimate defect_estimate(const ProjectiveMap& f, const Divisor& d, int truncation, std::span<const double> radii,
                               const QuadratureConfig& cfg) {
  validate_radii(radii);
  nonzero_pullback(f, d);
  DefectEstimate out;
  out.exact_counting = counts_exactly(f);
  std::optional<CountingFunction> exact;
  if (out.exact_counting) exact = counting_exact_1d(f, d, truncation);
  const std::size_t first = radii.size() > kDefectTail ? radii.size() - kDefectTail : 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i < radii.size(); ++i) {
    const double t = order_function(f, radii[i], cfg).value;
    if (!(t > 0)) throw PreconditionError("order function is not positive at r=" + std::to_string(radii[i]) +
                                          "; defect is undefined");
    double err = 0;
    const double n_value = exact ? (*exact)(radii[i]) : counting_value(f, d, truncation, radii[i], cfg, err);
    out.tail_ratios.push_back(n_value / (d.degree() * t));
    worst = std::max(worst, out.tail_ratios.back());
  }
  out.value = std::clamp(1 - worst, 0.0, 1.0);
  return out;
}

DefectRelationReport defect_relation_check(const ProjectiveMap& f, std::span<const Divisor> hyperplanes, int truncation,
                                           std::span<const double> radii, const QuadratureConfig& cfg) {
  require_hyperplanes(f, hyperplanes);
  DefectRelationReport report;
  report.bound = f.n() + 1;
  for (const auto& h : hyperplanes) {
    report.defects.push_back(defect_estimate(f, h, truncation, radii, cfg));
    report.sum += report.defects.back().value;
  }
  report.holds = report.sum <= report.bound + 1e-12;
  return report;
}

Rational ramification_sum(std::span<const int> mus, int kappa_value) {
  Rational sum(0);
  for (const int mu : mus) {
    if (mu < 1) throw PreconditionError("ramification multiplicity must be >= 1");
    sum += 1;
    if (mu != kInfinity) sum -= Rational(kappa_value, mu);
  }
  sum.canonicalize();
  return sum;
}

int observed_min_multiplicity(const ProjectiveMap& f, const Divisor& d, std::uint64_t seed) {
  const MultiPoly q = nonzero_pullback(f, d);
  if (q.is_constant()) return kInfinity;
  auto min_mult = [](const MultiPoly& univariate) {
    int m = kInfinity;
    const UniPoly u = UniPoly::from_multipoly(univariate);
    if (u.degree() <= 0) return m;
    for (const auto& [factor, mult] : squarefree_decomposition(u)) m = std::min(m, mult);
    return m;
  };
  if (f.p() == 1) return min_mult(q);
  // Restrictions to random lines: for generic lines each intersection carries
  // the multiplicity of the component it meets.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-50, 50);
  int best = kInfinity;
  constexpr int kLines = 4;
  for (int line = 0; line < kLines; ++line) {
    std::vector<MultiPoly> subs;
    for (int v = 0; v < f.p(); ++v) {
      MultiPoly s = MultiPoly::constant(1, CycloNumber(coord(rng)));
      s += MultiPoly::variable(1, 0) * CycloNumber(coord(rng));
      subs.push_back(std::move(s));
    }
    best = std::min(best, min_mult(q.compose(subs)));
  }
  return best;
}

RamificationReport ramification_check(const ProjectiveMap& f, std::span<const Divisor> hyperplanes,
                                      std::span<const RamificationDatum> mus, int s, std::uint64_t seed) {
  require_hyperplanes(f, hyperplanes);
  if (!in_general_position(hyperplanes)) throw PreconditionError("hyperplanes are not in general position");
  if (s < 1) throw PreconditionError("rank s must be >= 1");
  RamificationReport report;
  report.rank = s;
  report.n = f.n();
  report.kappa = kappa(s, f.n());
  report.bound = f.n() + 1;
  std::vector<int> supplied;
  for (const auto& datum : mus) {
    if (datum.divisor_index >= hyperplanes.size())
      throw PreconditionError("ramification datum refers to hyperplane " + std::to_string(datum.divisor_index));
    if (datum.mu < 1) throw PreconditionError("ramification multiplicity must be >= 1");
    const int observed = observed_min_multiplicity(f, hyperplanes[datum.divisor_index], seed);
    if (datum.mu > observed) {
      auto show = [](int mu) { return mu == kInfinity ? std::string("inf") : std::to_string(mu); };
      throw InconsistencyError("hyperplane " + std::to_string(datum.divisor_index) + ": supplied mu=" + show(datum.mu) +
                               " but the pullback has minimal multiplicity " + show(observed));
    }
    const int one[] = {datum.mu};
    report.terms.push_back({datum.mu, observed, ramification_sum(one, report.kappa)});
    supplied.push_back(datum.mu);
  }
  report.sum = ramification_sum(supplied, report.kappa);
  report.holds = report.sum <= report.bound;
  return report;
}

NevanlinnaProfile profile(const ProjectiveMap& f, std::span<const Divisor> divisors, int truncation,
                          std::span<const double> radii, const QuadratureConfig& cfg) {
  validate_radii(radii);
  NevanlinnaProfile out;
  out.radii.assign(radii.begin(), radii.end());
  out.truncation = truncation;
  out.exact_counting = counts_exactly(f);
  out.seed = f.p() == 1 ? 0 : cfg.seed;
  std::vector<CountingFunction> full;
  std::vector<CountingFunction> truncated;
  if (out.exact_counting) {
    for (const auto& d : divisors) {
      full.push_back(counting_exact_1d(f, d));
      truncated.push_back(counting_exact_1d(f, d, truncation));
    }
  }
  out.proximity.resize(divisors.size());
  out.counting.resize(divisors.size());
  out.counting_truncated.resize(divisors.size());
  for (const double r : radii) {
    const QuadratureResult t = order_function(f, r, cfg);
    out.order.push_back(t.value);
    out.method = t.method;
    out.nodes = t.nodes;
    out.quadrature_error = std::max(out.quadrature_error, t.error);
    for (std::size_t j = 0; j < divisors.size(); ++j) {
      const QuadratureResult m = proximity(f, divisors[j], r, cfg);
      out.proximity[j].push_back(m.value);
      out.quadrature_error = std::max(out.quadrature_error, m.error);
      if (out.exact_counting) {
        out.counting[j].push_back(full[j](r));
        out.counting_truncated[j].push_back(truncated[j](r));
      } else {
        const double n_value = counting_value(f, divisors[j], kInfinity, r, cfg, out.quadrature_error);
        out.counting[j].push_back(n_value);
        out.counting_truncated[j].push_back(n_value);
      }
    }
  }
  return out;
}

}  // namespace fermatlab::nevanlinna
