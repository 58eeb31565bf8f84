#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fermatlab/cyclo.hpp"
#include "fermatlab/kappa.hpp"
#include "fermatlab/projective_map.hpp"

namespace fermatlab::fermat {

using fermatlab::kappa;

enum class FermatKind { compact, logarithmic };
std::string to_string(FermatKind k);

enum class Verdict { pass, fail, not_applicable, error };
std::string to_string(Verdict v);

/// Target dimension n >= 2, degree d >= 1, and whether the map lands in the
/// Fermat hypersurface (compact) or avoids it (logarithmic).
struct FermatInstance {
  int n = 2;
  int d = 1;
  FermatKind kind = FermatKind::compact;

  void validate() const;
  /// d > (n+1) kappa(p, n-1) for compact, d > (n+1) kappa(p, n) for logarithmic.
  bool hypothesis_holds(int p) const;
  int degree_threshold(int p) const;
  /// floor((n-1)/2) for compact, floor(n/2) for logarithmic.
  int dimension_bound() const;
};

struct PowerMap {
  ProjectiveMap map;
  int d = 1;
  /// Minimal multiplicity of the pullback of {omega_i = 0}, p = 1 only;
  /// nevanlinna::kInfinity for omitted hyperplanes.
  std::vector<int> min_multiplicities;
  /// Every pullback multiplicity was checked to be a multiple of d (p = 1).
  bool multiplicities_verified = false;
};

/// [f_0^d : ... : f_n^d].
PowerMap power_map(const ProjectiveMap& f, int d);

/// sum_i f_i^d == 0 exactly.
bool fermat_membership(const ProjectiveMap& f, int d);

/// Basis of {a : sum_i a_i f_i^d = 0}.
std::vector<std::vector<CycloNumber>> find_power_relations(const ProjectiveMap& f, int d);

/// Classes of components under f_j = c f_i for a nonzero constant c.
struct RatioPartition {
  std::vector<std::vector<int>> classes;  // sorted, each starting with its representative
  std::vector<int> representative;        // per component index
  std::vector<CycloNumber> ratio;         // f_j = ratio[j] * f_{representative[j]}
};

/// Requires every component to be nonzero.
RatioPartition ratio_partition(const ProjectiveMap& f);

/// omega_j = ratio * omega_rep, or omega_j = 0 when rep < 0.
struct LinearEquation {
  int j;
  int rep;
  CycloNumber ratio;
  std::string to_string() const;
};

struct SubspaceReport {
  Verdict verdict = Verdict::not_applicable;
  std::string diagnostic;
  std::vector<LinearEquation> equations;
  int dimension = -1;
  int bound = 0;
  std::optional<RatioPartition> partition;
  /// sum_{j in I_r} ratio_j^d per class; all zero for the compact argument.
  std::vector<CycloNumber> class_power_sums;
  bool class_sums_vanish = false;
  int generic_rank = 0;
  bool rank_within_dimension = false;
  /// For the logarithmic kind, the appended constant component.
  std::optional<CycloNumber> appended_component;
  std::vector<std::string> notes;
};

/// Runs the partition pipeline and compares the dimension of the cut-out
/// subspace with the dimension cap. Unmet hypotheses give not_applicable.
/// `field_order` is the coefficient field used for root extraction in the
/// logarithmic kind (0 selects the map's own field).
SubspaceReport degeneracy_subspace(const ProjectiveMap& f, const FermatInstance& instance, int field_order = 0);

/// Exact d-th root of x of the form zeta_N^k * q with q rational, trying k = 0
/// first and positive q before negative q.
std::optional<CycloNumber> dth_root(const CycloNumber& x, int d, int field_order);

struct LogarithmicExtension {
  ProjectiveMap map;  // [f_0 : ... : f_n : mu]
  CycloNumber power_sum;
  CycloNumber mu;
};

/// Appends mu with mu^d = -c where c = sum f_i^d must be a nonzero constant.
/// Throws PreconditionError when the power sum is nonconstant or zero and
/// DomainError when -c has no d-th root in Q(zeta_N).
LogarithmicExtension logarithmic_extend(const ProjectiveMap& f, int d, int field_order = 0);

struct CorollaryReport {
  int p = 0;
  int n = 0;
  int d = 0;
  FermatKind kind = FermatKind::compact;
  int kappa_value = 0;
  int degree_threshold = 0;
  bool degree_condition = false;
  int dimension_threshold = 0;
  bool dimension_condition = false;
  /// Maximal-rank maps are ruled out.
  bool nonexistence = false;
  std::optional<int> map_rank;
  std::optional<int> subspace_dimension;
  std::optional<bool> rank_consistent;
};

CorollaryReport corollary_verdict(int p, int n, int d, FermatKind kind);
/// As above, and for a map whose degeneracy_subspace passes, checks
/// generic_rank(f) <= the reported subspace dimension.
CorollaryReport corollary_verdict(const ProjectiveMap& f, int d, FermatKind kind, int field_order = 0);

struct ProofTrace {
  int gamma = 0;
  int s = 0;
  int d = 0;
  int n = 0;
  int p = 0;
  bool terminates_immediately = false;  // gamma == 2
  int d_i = 0;
  Rational lhs;                          // gamma * (1 - d_I / d)
  int threshold = 0;                     // gamma - 1
  bool contradiction = false;            // lhs > threshold, i.e. d > gamma d_I
  int rank_lower_bound = 0;              // max(p - (n + 1 - gamma), 1)
  bool wide_case = false;                // p + gamma > n + 1
  int gamma_d_i = 0;
  int chain_bound = 0;                   // (n+1)(n-p)
  bool chain_strict = false;             // gamma d_I < (n+1)(n-p)
};

ProofTrace proof_trace(int gamma, int s, int d, int n, int p);

}  // namespace fermatlab::fermat
