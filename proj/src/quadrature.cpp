#include "fermatlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fermatlab/errors.hpp"

namespace fermatlab::nevanlinna {

std::string to_string(QuadratureMethod m) { return m == QuadratureMethod::trapezoid ? "trapezoid" : "monte_carlo"; }

namespace {

// Neumaier summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

constexpr int kMaxGridRotations = 16;

struct SingularNode {};

QuadratureResult trapezoid(const Integrand& g, double r, int base_nodes, int max_nodes, double tolerance) {
  if (base_nodes < 2 || base_nodes % 2 != 0) throw PreconditionError("circle node count must be even and >= 2");
  const double two_pi = 2 * std::numbers::pi;
  std::size_t rejected = 0;
  for (int rotation = 0; rotation < kMaxGridRotations; ++rotation) {
    // Irrational offset: with a rational one, zeros at roots of unity can give
    // the full and half grids identical errors and stall the refinement test.
    const double phase = two_pi / base_nodes * (std::numbers::phi - 1 + rotation * std::numbers::phi);
    auto sample = [&](double theta) {
      const std::complex<double> z = std::polar(r, theta);
      const double v = g(std::span<const std::complex<double>>(&z, 1));
      if (!std::isfinite(v)) throw SingularNode{};
      return v;
    };
    try {
      CompensatedSum even;
      CompensatedSum odd;
      int n = base_nodes;
      for (int k = 0; k < n; ++k) (k % 2 == 0 ? even : odd).add(sample(phase + two_pi * k / n));
      for (;;) {
        const double total = even.value() + odd.value();
        const double estimate = total / n;
        const double error = std::abs(estimate - even.value() / (n / 2));
        if (error <= tolerance || 2 * static_cast<long>(n) > max_nodes)
          return {estimate, error, QuadratureMethod::trapezoid, static_cast<std::size_t>(n), rejected, 0};
        // Previous nodes become the even half of the doubled grid.
        even = CompensatedSum();
        even.add(total);
        odd = CompensatedSum();
        for (int k = 0; k < n; ++k) odd.add(sample(phase + std::numbers::pi * (2 * k + 1) / n));
        n *= 2;
      }
    } catch (const SingularNode&) {
      ++rejected;
    }
  }
  throw SingularityError("circle quadrature hit singular nodes on " + std::to_string(kMaxGridRotations) +
                         " rotated grids at r=" + std::to_string(r));
}

QuadratureResult monte_carlo(const Integrand& g, int p, double r, const QuadratureConfig& cfg) {
  if (cfg.samples < 2) throw PreconditionError("Monte Carlo needs at least 2 samples");
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  const auto max_rejected = static_cast<std::size_t>(cfg.max_rejected_fraction * static_cast<double>(cfg.samples));
  std::vector<double> values;
  values.reserve(cfg.samples);
  std::vector<std::complex<double>> z(static_cast<std::size_t>(p));
  std::size_t rejected = 0;
  while (values.size() < cfg.samples) {
    double norm2 = 0;
    for (auto& c : z) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      c = {re, im};
      norm2 += re * re + im * im;
    }
    const double scale = r / std::sqrt(norm2);
    for (auto& c : z) c *= scale;
    const double v = g(z);
    if (!std::isfinite(v)) {
      if (++rejected > max_rejected)
        throw SingularityError("Monte Carlo rejected " + std::to_string(rejected) + " singular samples of " +
                               std::to_string(cfg.samples) + " at r=" + std::to_string(r));
      continue;
    }
    values.push_back(v);
  }
  CompensatedSum sum;
  for (double v : values) sum.add(v);
  const double n = static_cast<double>(values.size());
  const double mean = sum.value() / n;
  CompensatedSum sq;
  for (double v : values) sq.add((v - mean) * (v - mean));
  const double standard_error = std::sqrt(sq.value() / (n - 1) / n);
  return {mean, standard_error, QuadratureMethod::monte_carlo, values.size(), rejected, cfg.seed};
}

}  // namespace

QuadratureResult sphere_average(const Integrand& g, int p, double r, const QuadratureConfig& cfg) {
  if (p < 1) throw PreconditionError("sphere_average needs p >= 1");
  if (!(r > 0) || !std::isfinite(r)) throw PreconditionError("sphere_average needs a finite radius r > 0");
  if (p == 1) return trapezoid(g, r, cfg.circle_nodes, cfg.circle_nodes, 0);
  return monte_carlo(g, p, r, cfg);
}

QuadratureResult circle_average_adaptive(const Integrand& g, double r, const QuadratureConfig& cfg) {
  if (!(r > 0) || !std::isfinite(r)) throw PreconditionError("circle_average_adaptive needs a finite radius r > 0");
  return trapezoid(g, r, cfg.circle_nodes, cfg.max_circle_nodes, cfg.refinement_tolerance);
}

}  // namespace fermatlab::nevanlinna
