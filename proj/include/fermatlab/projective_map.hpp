#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fermatlab/multipoly.hpp"

namespace fermatlab {

/// Outcome of a generic-rank computation.
struct RankInfo {
  enum class Method { symbolic, randomized, both };
  int rank = 0;
  Method method = Method::randomized;
  /// Upper bound on the probability that the randomized path underestimated
  /// the rank; 0 when only the exact path ran.
  double failure_bound = 0;
};

std::string to_string(RankInfo::Method m);

/// Largest Jacobian size handled by exact minors.
inline constexpr int kSymbolicRankCap = 4;
/// Number of random evaluation points and the size of the coordinate grid.
inline constexpr int kRankSamplePoints = 3;
inline constexpr std::int64_t kRankGrid = 1'000'000;
inline constexpr std::uint64_t kDefaultRankSeed = 0x5eed'f00dULL;

/// Random lines used by the reduced-representation check.
inline constexpr int kCoprimalityLines = 8;

/// Probabilistic check that the components share no common factor: restricts
/// them to random lines and takes univariate gcds.
bool passes_coprimality_check(std::span<const MultiPoly> components, std::uint64_t seed = kDefaultRankSeed);

/// Generic rank of the differential of z -> [f_0(z) : ... : f_n(z)].
RankInfo generic_rank(std::span<const MultiPoly> components, std::uint64_t seed = kDefaultRankSeed);

/// Reduced representation [f_0 : ... : f_n] of a polynomial map C^p -> CP^n.
/// Immutable; the generic rank is computed once on construction.
class ProjectiveMap {
 public:
  /// Validates shape, nonvanishing and the coprimality check.
  static ProjectiveMap make(std::vector<MultiPoly> components);

  int p() const noexcept { return p_; }
  int n() const noexcept { return static_cast<int>(components_.size()) - 1; }
  const std::vector<MultiPoly>& components() const noexcept { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_[i]; }
  int generic_rank() const noexcept { return rank_.rank; }
  const RankInfo& rank_info() const noexcept { return rank_; }
  bool is_maximal_rank() const noexcept;
  int field_order() const;
  std::string to_string() const;

 private:
  ProjectiveMap(std::vector<MultiPoly> components, RankInfo rank);

  int p_;
  std::vector<MultiPoly> components_;
  RankInfo rank_;
};

RankInfo generic_rank(const ProjectiveMap& f, std::uint64_t seed);

}  // namespace fermatlab
