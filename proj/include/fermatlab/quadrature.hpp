#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

namespace fermatlab::nevanlinna {

enum class QuadratureMethod { trapezoid, monte_carlo };
std::string to_string(QuadratureMethod m);

inline constexpr std::uint64_t kDefaultQuadratureSeed = 20'240'917ULL;

struct QuadratureConfig {
  /// Trapezoid nodes on the circle (p = 1).
  int circle_nodes = 4096;
  /// Monte Carlo sample count on the sphere (p >= 2).
  std::size_t samples = 100'000;
  std::uint64_t seed = kDefaultQuadratureSeed;
  /// Integrand arguments smaller than this are treated as singular samples.
  double singular_tolerance = 1e-12;
  /// Abort when more than this fraction of samples is rejected.
  double max_rejected_fraction = 1e-3;
  /// Ceiling for adaptive node doubling on the circle.
  int max_circle_nodes = 1 << 23;
  /// Adaptive doubling stops once successive estimates differ by less.
  double refinement_tolerance = 1e-11;
};

struct QuadratureResult {
  double value = 0;
  /// Half-grid difference (trapezoid) or standard error (Monte Carlo).
  double error = 0;
  QuadratureMethod method = QuadratureMethod::trapezoid;
  std::size_t nodes = 0;
  std::size_t rejected = 0;
  std::uint64_t seed = 0;
};

/// Integrand on C^p. Returning a non-finite value marks the sample singular;
/// singular samples are rejected and resampled.
using Integrand = std::function<double(std::span<const std::complex<double>>)>;

/// Average of g over the sphere |z| = r in C^p against the normalized
/// unitarily invariant measure. p = 1 uses the trapezoid rule with
/// cfg.circle_nodes nodes; p >= 2 uses Monte Carlo with cfg.samples points.
/// Monte Carlo points are r * u with u drawn from cfg.seed, so calls sharing a
/// seed reuse the same directions at every radius.
QuadratureResult sphere_average(const Integrand& g, int p, double r, const QuadratureConfig& cfg = {});

/// Trapezoid rule on |z| = r that doubles the node count from
/// cfg.circle_nodes until successive estimates agree to
/// cfg.refinement_tolerance or cfg.max_circle_nodes is reached.
QuadratureResult circle_average_adaptive(const Integrand& g, double r, const QuadratureConfig& cfg = {});

}  // namespace fermatlab::nevanlinna
