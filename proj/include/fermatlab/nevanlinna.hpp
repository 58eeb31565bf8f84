#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fermatlab/cyclo.hpp"
#include "fermatlab/multipoly.hpp"
#include "fermatlab/projective_map.hpp"
#include "fermatlab/quadrature.hpp"

namespace fermatlab::nevanlinna {

/// Truncation level meaning "no truncation", and the multiplicity of an omitted divisor.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

/// Hypersurface {Q = 0} in CP^n given by a nonzero homogeneous Q in n+1 variables.
class Divisor {
 public:
  static Divisor make(MultiPoly q);
  /// sum_i a_i omega_i.
  static Divisor hyperplane(const std::vector<CycloNumber>& coeffs);

  const MultiPoly& poly() const noexcept { return q_; }
  int degree() const noexcept { return degree_; }
  /// Dimension of the ambient projective space.
  int n() const noexcept { return q_.nvars() - 1; }
  bool is_hyperplane() const noexcept { return degree_ == 1; }
  /// Coefficients a_0..a_n; requires is_hyperplane().
  std::vector<CycloNumber> hyperplane_coeffs() const;
  /// Maximum absolute value of the coefficients.
  double coefficient_norm() const { return q_.max_coeff_abs(); }
  std::string to_string() const { return q_.to_string(); }

 private:
  Divisor(MultiPoly q, int degree) : q_(std::move(q)), degree_(degree) {}
  MultiPoly q_;
  int degree_;
};

/// Q(f_0, ..., f_n) as a polynomial on C^p.
MultiPoly pullback(const ProjectiveMap& f, const Divisor& d);

/// Every n+1 of the hyperplanes are linearly independent.
bool in_general_position(std::span<const Divisor> hyperplanes);

/// Zeros of f*D for p = 1.
struct PullbackZero {
  std::complex<double> location;
  /// The zero lies within this distance of `location`.
  double radius = 0;
  int multiplicity = 1;
  bool exact_origin = false;
};

struct ZeroDivisor1D {
  std::vector<PullbackZero> zeros;
  /// kInfinity when there are no zeros.
  int min_multiplicity() const;
  int total_multiplicity() const;
};

/// Exact multiplicities from a squarefree decomposition of Q(f), locations
/// from certified root isolation. Requires p = 1 and Q(f) not identically 0.
ZeroDivisor1D zero_divisor_1d(const ProjectiveMap& f, const Divisor& d);

/// r -> N^[m](r) = int_1^r n^[m](t) dt / t with the step function n^[m].
class CountingFunction {
 public:
  CountingFunction(ZeroDivisor1D zeros, int truncation);
  double operator()(double r) const;
  int truncation() const noexcept { return truncation_; }
  const ZeroDivisor1D& zeros() const noexcept { return zeros_; }
  /// Closed form valid for r beyond every zero, e.g. "3*log(r)" or "log(r) - 0.693147...".
  std::string formula() const;

 private:
  ZeroDivisor1D zeros_;
  int truncation_;
};

CountingFunction counting_exact_1d(const ProjectiveMap& f, const Divisor& d, int truncation = kInfinity);

/// T_f(r): sphere average of log max_i |f_i|. Requires r > 1.
QuadratureResult order_function(const ProjectiveMap& f, double r, const QuadratureConfig& cfg = {});

/// m_f(r, D): sphere average of log(||f||^d ||Q|| / |Q(f)|). Throws
/// ContainmentError if Q(f) vanishes identically.
QuadratureResult proximity(const ProjectiveMap& f, const Divisor& d, double r, const QuadratureConfig& cfg = {});

/// Untruncated N(r) as the difference of the averages of log|Q(f)| at r and 1.
/// p = 1 refines the circle grid adaptively; p >= 2 averages the difference
/// over shared Monte Carlo directions.
QuadratureResult counting_jensen(const ProjectiveMap& f, const Divisor& d, double r, const QuadratureConfig& cfg = {});

/// Radii strictly increasing and > 1.
void validate_radii(std::span<const double> radii);
inline const std::vector<double> kDefaultRadii{2, 4, 8, 16, 32};

struct FmtRow {
  double r;
  double order;
  double proximity;
  double counting;
  double residual;
};

struct FmtReport {
  std::vector<FmtRow> rows;
  /// max_i |rho(r_i) - rho(r_1)|.
  double residual_variation = 0;
  /// Largest quadrature error estimate among the functionals used.
  double quadrature_error = 0;
  /// -log(#terms of Q); m_f is bounded below by it.
  double proximity_lower_bound = 0;
  /// max_i (N - d T); bounded above by rho(r_1) - proximity_lower_bound + variation.
  double counting_excess = 0;
  bool exact_counting = false;
  bool residual_bounded = false;
  bool proximity_bounded_below = false;
  bool counting_inequality = false;
  bool passed() const { return residual_bounded && proximity_bounded_below && counting_inequality; }
};

/// rho(r) = m_f(r, D) + N_f(r, D) - d T_f(r) on the grid. Counting is exact for
/// p = 1 and Jensen-based otherwise. The residual is bounded when its variation
/// is at most 10 quadrature errors plus `tolerance`.
FmtReport fmt_check(const ProjectiveMap& f, const Divisor& d, std::span<const double> radii,
                    const QuadratureConfig& cfg = {}, double tolerance = 1e-8);

struct SmtRow {
  double r;
  double order;
  std::vector<double> counting;  // truncated (p = 1) or untruncated (p >= 2), one per hyperplane
  double slack;
};

inline constexpr double kSmtFitRadius = 4;

struct SmtReport {
  int q = 0;
  int n = 0;
  int rank = 0;
  int truncation = 0;
  bool exact_counting = false;
  std::vector<SmtRow> rows;
  /// C = max(0, -min slack) over radii <= kSmtFitRadius (the first radius if none).
  double fitted_constant = 0;
  std::size_t fit_rows = 0;
  bool passed = false;
  std::string caveat;
};

/// slack(r) = sum_i N^[n+1-s](r, H_i) - (q - n - 1) T_f(r), checked against
/// -C - tolerance beyond the fitting radii. Throws PreconditionError when f is
/// linearly degenerate, q < n + 2, or the hyperplanes are not in general position.
SmtReport smt_check(const ProjectiveMap& f, std::span<const Divisor> hyperplanes, std::span<const double> radii,
                    const QuadratureConfig& cfg = {}, double tolerance = 1e-8);

inline constexpr std::size_t kDefectTail = 3;

struct DefectEstimate {
  /// 1 - max over the last kDefectTail radii of N^[m] / (d T), clamped to [0, 1].
  double value = 0;
  std::vector<double> tail_ratios;
  bool exact_counting = false;
};

DefectEstimate defect_estimate(const ProjectiveMap& f, const Divisor& d, int truncation, std::span<const double> radii,
                               const QuadratureConfig& cfg = {});

struct DefectRelationReport {
  std::vector<DefectEstimate> defects;
  double sum = 0;
  int bound = 0;  // n + 1
  bool holds = false;
};

DefectRelationReport defect_relation_check(const ProjectiveMap& f, std::span<const Divisor> hyperplanes, int truncation,
                                           std::span<const double> radii, const QuadratureConfig& cfg = {});

/// Per-hyperplane minimal multiplicity; mu = kInfinity for an omitted hyperplane.
struct RamificationDatum {
  std::size_t divisor_index = 0;
  int mu = kInfinity;
};

/// sum_i (1 - kappa / mu_i) with kappa / infinity = 0.
Rational ramification_sum(std::span<const int> mus, int kappa);

/// Smallest multiplicity of f*D: exact for p = 1, from restrictions to random
/// lines for p >= 2. kInfinity when Q(f) is a nonzero constant.
int observed_min_multiplicity(const ProjectiveMap& f, const Divisor& d, std::uint64_t seed = kDefaultRankSeed);

struct RamificationTerm {
  int supplied_mu;
  int observed_mu;
  Rational term;
};

struct RamificationReport {
  int rank = 0;
  int n = 0;
  int kappa = 0;
  std::vector<RamificationTerm> terms;
  Rational sum;
  int bound = 0;  // n + 1
  bool holds = false;
};

/// Evaluates sum (1 - kappa(s, n) / mu_i) <= n + 1 after checking each supplied
/// mu_i against the observed multiplicities. Throws InconsistencyError when a
/// supplied mu exceeds what the map actually attains.
RamificationReport ramification_check(const ProjectiveMap& f, std::span<const Divisor> hyperplanes,
                                      std::span<const RamificationDatum> mus, int s,
                                      std::uint64_t seed = kDefaultRankSeed);

struct NevanlinnaProfile {
  std::vector<double> radii;
  std::vector<double> order;
  std::vector<std::vector<double>> proximity;  // [divisor][radius]
  std::vector<std::vector<double>> counting;
  std::vector<std::vector<double>> counting_truncated;
  int truncation = kInfinity;
  bool exact_counting = false;
  QuadratureMethod method = QuadratureMethod::trapezoid;
  std::size_t nodes = 0;
  std::uint64_t seed = 0;
  double quadrature_error = 0;
};

/// T, m, N and N^[m] for every divisor on the grid. For p >= 2 the truncated
/// column repeats the untruncated Jensen value (an upper bound).
NevanlinnaProfile profile(const ProjectiveMap& f, std::span<const Divisor> divisors, int truncation,
                          std::span<const double> radii, const QuadratureConfig& cfg = {});

}  // namespace fermatlab::nevanlinna
