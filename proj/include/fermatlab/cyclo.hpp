#pragma once

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fermatlab {

using Rational = mpq_class;

/// Structure constants of Q(zeta_N): the N-th cyclotomic polynomial and its degree.
/// Instances are interned and immutable.
class CycloField {
 public:
  static std::shared_ptr<const CycloField> get(int order);

  int order() const noexcept { return order_; }
  int degree() const noexcept { return static_cast<int>(modulus_.size()) - 1; }
  /// Coefficients of Phi_N, lowest degree first; monic.
  const std::vector<long long>& modulus() const noexcept { return modulus_; }
  /// Double-precision approximation of zeta_N = exp(2 pi i / N).
  std::complex<long double> zeta_approx() const noexcept { return zeta_; }

  explicit CycloField(int order);

 private:
  int order_;
  std::vector<long long> modulus_;
  std::complex<long double> zeta_;
};

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree first.
std::vector<long long> cyclotomic_polynomial(int order);

/// Euler totient.
int euler_phi(int n);

/// Exact element of Q(zeta_N), stored as the canonical residue modulo Phi_N.
/// Elements of Q (conductor 1) combine freely with any field; other mixed
/// conductors are embedded when one divides the other.
class CycloNumber {
 public:
  CycloNumber();
  CycloNumber(long value);  // NOLINT(google-explicit-constructor)
  CycloNumber(const Rational& value);  // NOLINT(google-explicit-constructor)

  static CycloNumber zero(int order);
  static CycloNumber one(int order);
  static CycloNumber rational(int order, const Rational& value);
  /// zeta_N^k for any integer k.
  static CycloNumber zeta(int order, long exponent = 1);
  /// Residue of sum_k coeffs[k] x^k modulo Phi_N; coeffs may have any length.
  static CycloNumber from_power_coeffs(int order, std::span<const Rational> coeffs);

  /// Parses sums of monomials such as "3/7", "-z4", "1/2+3*z14^3". Every zK must
  /// have K dividing `order`. Floating literals are rejected.
  static CycloNumber parse(std::string_view text, int order);

  int order() const noexcept { return field_->order(); }
  const CycloField& field() const noexcept { return *field_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Requires is_rational().
  const Rational& rational_value() const;

  CycloNumber inverse() const;
  CycloNumber pow(long exponent) const;
  /// Image in Q(zeta_M); requires order() to divide M.
  CycloNumber embed(int target_order) const;

  std::complex<long double> approx() const;
  /// Sum of |c_k| over the power basis; bounds |approx()|.
  double coefficient_l1() const;

  /// Canonical text, e.g. "0", "-3/7", "1+z4", "2-1/3*z14^5".
  std::string to_string() const;

  CycloNumber operator-() const;
  CycloNumber& operator+=(const CycloNumber& rhs);
  CycloNumber& operator-=(const CycloNumber& rhs);
  CycloNumber& operator*=(const CycloNumber& rhs);
  CycloNumber& operator/=(const CycloNumber& rhs);

  friend CycloNumber operator+(CycloNumber a, const CycloNumber& b) { return a += b; }
  friend CycloNumber operator-(CycloNumber a, const CycloNumber& b) { return a -= b; }
  friend CycloNumber operator*(CycloNumber a, const CycloNumber& b) { return a *= b; }
  friend CycloNumber operator/(CycloNumber a, const CycloNumber& b) { return a /= b; }
  friend bool operator==(const CycloNumber& a, const CycloNumber& b);

 private:
  CycloNumber(std::shared_ptr<const CycloField> field, std::vector<Rational> coeffs);
  static int common_order(const CycloNumber& a, const CycloNumber& b);
  void reduce_power_form(std::vector<Rational>& product);

  std::shared_ptr<const CycloField> field_;
  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const CycloNumber& x);

}  // namespace fermatlab
