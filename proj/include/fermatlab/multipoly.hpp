#pragma once

#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermatlab/cyclo.hpp"
#include "fermatlab/diff_word.hpp"

namespace fermatlab {

using Exponent = std::vector<int>;

/// Sparse polynomial in p variables over a cyclotomic field. Terms are kept in
/// lexicographic exponent order and never store a zero coefficient.
class MultiPoly {
 public:
  /// Degree sentinel of the zero polynomial, distinct from the degree 0 of constants.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  using TermMap = std::map<Exponent, CycloNumber>;

  explicit MultiPoly(int nvars = 0);
  static MultiPoly constant(int nvars, const CycloNumber& c);
  /// The coordinate z_{index+1}.
  static MultiPoly variable(int nvars, int index);
  static MultiPoly monomial(const Exponent& exponent, const CycloNumber& c);

  int nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  int degree_in(int var) const;
  CycloNumber coeff(const Exponent& exponent) const;
  /// Largest conductor among the coefficients (1 for the zero polynomial).
  int field_order() const;
  /// Maximum over coefficients of |c|, using the complex embedding zeta_N = exp(2 pi i/N).
  double max_coeff_abs() const;
  bool is_homogeneous() const;

  /// Adds c * z^exponent.
  void add_term(const Exponent& exponent, const CycloNumber& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& rhs);
  MultiPoly& operator-=(const MultiPoly& rhs);
  MultiPoly& operator*=(const MultiPoly& rhs);
  MultiPoly& operator*=(const CycloNumber& scalar);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const CycloNumber& s) { return a *= s; }
  friend MultiPoly operator*(const CycloNumber& s, MultiPoly a) { return a *= s; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned exponent) const;
  /// d/dz_{var+1}, applied `times` times.
  MultiPoly derivative(int var, int times = 1) const;
  /// Iterated partial derivative along the letters of `word`.
  MultiPoly diff(const DiffWord& word) const;

  /// Exact value at a point of the coefficient field.
  CycloNumber eval(std::span<const CycloNumber> point) const;
  /// Substitutes subs[i] for z_{i+1}; all substitutes share one variable count.
  MultiPoly compose(std::span<const MultiPoly> subs) const;
  /// Exact quotient when `divisor` divides *this, std::nullopt otherwise.
  std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const;

  /// Canonical text: terms "coef@e1,...,ep" joined by spaces; "0" for zero.
  std::string to_string() const;

 private:
  int nvars_;
  TermMap terms_;
};

/// Exact iterated partial derivative.
inline MultiPoly poly_diff(const MultiPoly& f, const DiffWord& word) { return f.diff(word); }

/// Floating-point image of a MultiPoly for repeated evaluation.
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const MultiPoly& f);

  int nvars() const noexcept { return nvars_; }
  std::complex<double> operator()(std::span<const std::complex<double>> z) const;

 private:
  struct Term {
    std::vector<int> exponent;
    std::complex<double> coeff;
  };
  int nvars_ = 0;
  int max_power_ = 0;
  std::vector<Term> terms_;
};

/// Evaluation point in C^p; constructor rejects non-finite entries.
class ComplexPoint {
 public:
  explicit ComplexPoint(std::vector<std::complex<double>> coords);
  const std::vector<std::complex<double>>& coords() const noexcept { return coords_; }
  std::size_t dim() const noexcept { return coords_.size(); }

 private:
  std::vector<std::complex<double>> coords_;
};

struct EvalResult {
  std::complex<double> value;
  /// Bound on |value - f(z)| from rounding and from the zeta approximation.
  double error_bound;
};

/// Numerical value of f(z) with zeta_N replaced by `zeta_approx`, where N is
/// the nearest order exp(2 pi i / N) and must be a multiple of f's conductor.
/// Throws DomainError when the approximation is off by more than `zeta_tolerance`.
EvalResult poly_eval(const MultiPoly& f, const ComplexPoint& z, std::complex<double> zeta_approx,
                     double zeta_tolerance = 1e-12);

}  // namespace fermatlab
