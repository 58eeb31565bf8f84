#include "fermatlab/cyclo.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>

#include "fermatlab/errors.hpp"

namespace fermatlab {

namespace {

using RatPoly = std::vector<Rational>;  // lowest degree first

void trim(RatPoly& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

// Division with remainder in Q[x]; b must be nonzero and trimmed.
void divmod(RatPoly a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  const Rational& lead = b.back();
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    Rational c = a.back() / lead;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  r = std::move(a);
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

RatPoly sub(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::vector<long long> divide_exact_int(std::vector<long long> a, const std::vector<long long>& b) {
  // b monic
  const std::size_t deg_b = b.size() - 1;
  std::vector<long long> q(a.size() - deg_b, 0);
  for (std::size_t shift = q.size(); shift-- > 0;) {
    const long long c = a[shift + deg_b];
    q[shift] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
  }
  return q;
}

std::mutex& field_mutex() {
  static std::mutex m;
  return m;
}

[[noreturn]] void parse_fail(const std::string& message, std::string_view text, std::size_t pos,
                             std::size_t len) {
  const std::size_t end = std::min(text.size(), pos + std::max<std::size_t>(len, 1));
  throw ParseError(message, 1, pos + 1, std::string(text.substr(pos, end - pos)));
}

}  // namespace

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<long long> cyclotomic_polynomial(int order) {
  if (order < 1) throw DomainError("cyclotomic order must be positive");
  static std::map<int, std::vector<long long>> cache;
  {
    std::lock_guard lock(field_mutex());
    if (auto it = cache.find(order); it != cache.end()) return it->second;
  }
  std::vector<long long> poly(static_cast<std::size_t>(order) + 1, 0);
  poly[0] = -1;
  poly[static_cast<std::size_t>(order)] = 1;
  for (int d = 1; d < order; ++d) {
    if (order % d == 0) poly = divide_exact_int(std::move(poly), cyclotomic_polynomial(d));
  }
  std::lock_guard lock(field_mutex());
  cache.emplace(order, poly);
  return poly;
}

CycloField::CycloField(int order) : order_(order), modulus_(cyclotomic_polynomial(order)) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(order);
  zeta_ = std::complex<long double>(std::cos(angle), std::sin(angle));
}

std::shared_ptr<const CycloField> CycloField::get(int order) {
  thread_local std::map<int, std::shared_ptr<const CycloField>> local;
  if (auto it = local.find(order); it != local.end()) return it->second;
  if (order < 1 || order > 100000) throw DomainError("unsupported cyclotomic order " + std::to_string(order));
  static std::mutex registry_mutex;
  static std::map<int, std::shared_ptr<const CycloField>> registry;
  std::shared_ptr<const CycloField> field;
  {
    std::lock_guard lock(registry_mutex);
    if (auto it = registry.find(order); it != registry.end()) field = it->second;
  }
  if (!field) {
    auto fresh = std::make_shared<const CycloField>(order);
    std::lock_guard lock(registry_mutex);
    field = registry.emplace(order, std::move(fresh)).first->second;
  }
  local.emplace(order, field);
  return field;
}

CycloNumber::CycloNumber() : CycloNumber(Rational(0)) {}

CycloNumber::CycloNumber(long value) : CycloNumber(Rational(value)) {}

CycloNumber::CycloNumber(const Rational& value) : field_(CycloField::get(1)), coeffs_{value} {}

CycloNumber::CycloNumber(std::shared_ptr<const CycloField> field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {}

CycloNumber CycloNumber::zero(int order) {
  auto f = CycloField::get(order);
  const auto deg = static_cast<std::size_t>(f->degree());
  return CycloNumber(std::move(f), std::vector<Rational>(deg, Rational(0)));
}

CycloNumber CycloNumber::one(int order) { return rational(order, Rational(1)); }

CycloNumber CycloNumber::rational(int order, const Rational& value) {
  CycloNumber x = zero(order);
  x.coeffs_[0] = value;
  return x;
}

CycloNumber CycloNumber::zeta(int order, long exponent) {
  long k = exponent % order;
  if (k < 0) k += order;
  std::vector<Rational> power(static_cast<std::size_t>(k) + 1, Rational(0));
  power.back() = 1;
  return from_power_coeffs(order, power);
}

CycloNumber CycloNumber::from_power_coeffs(int order, std::span<const Rational> coeffs) {
  CycloNumber x = zero(order);
  std::vector<Rational> work(coeffs.begin(), coeffs.end());
  x.reduce_power_form(work);
  return x;
}

void CycloNumber::reduce_power_form(std::vector<Rational>& product) {
  const auto& phi = field_->modulus();
  const std::size_t deg = phi.size() - 1;
  for (std::size_t k = product.size(); k-- > deg;) {
    if (sgn(product[k]) == 0) continue;
    const Rational c = product[k];
    const std::size_t shift = k - deg;
    for (std::size_t i = 0; i < deg; ++i) {
      if (phi[i] != 0) product[shift + i] -= c * static_cast<long>(phi[i]);
    }
    product[k] = 0;
  }
  product.resize(deg, Rational(0));
  coeffs_ = std::move(product);
}

bool CycloNumber::is_zero() const {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

bool CycloNumber::is_one() const { return is_rational() && coeffs_[0] == 1; }

bool CycloNumber::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) return false;
  return true;
}

const Rational& CycloNumber::rational_value() const {
  if (!is_rational()) throw DomainError("element is not rational: " + to_string());
  return coeffs_[0];
}

int CycloNumber::common_order(const CycloNumber& a, const CycloNumber& b) {
  const int na = a.order();
  const int nb = b.order();
  if (na == nb) return na;
  if (a.is_rational()) return nb;
  if (b.is_rational()) return na;
  if (nb % na == 0) return nb;
  if (na % nb == 0) return na;
  throw DomainError("incompatible cyclotomic conductors " + std::to_string(na) + " and " +
                    std::to_string(nb));
}

CycloNumber CycloNumber::embed(int target_order) const {
  if (target_order == order()) return *this;
  if (is_rational()) return rational(target_order, coeffs_[0]);
  if (target_order % order() != 0)
    throw DomainError("cannot embed Q(zeta_" + std::to_string(order()) + ") into Q(zeta_" +
                      std::to_string(target_order) + ")");
  const std::size_t step = static_cast<std::size_t>(target_order / order());
  std::vector<Rational> power(step * (coeffs_.size() - 1) + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) power[k * step] = coeffs_[k];
  return from_power_coeffs(target_order, power);
}

CycloNumber CycloNumber::operator-() const {
  CycloNumber x = *this;
  for (auto& c : x.coeffs_) c = -c;
  return x;
}

CycloNumber& CycloNumber::operator+=(const CycloNumber& rhs) {
  const int n = common_order(*this, rhs);
  if (order() != n) *this = embed(n);
  if (rhs.order() != n) return *this += rhs.embed(n);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

CycloNumber& CycloNumber::operator-=(const CycloNumber& rhs) { return *this += -rhs; }

CycloNumber& CycloNumber::operator*=(const CycloNumber& rhs) {
  const int n = common_order(*this, rhs);
  if (order() != n) *this = embed(n);
  if (rhs.order() != n) return *this *= rhs.embed(n);
  if (rhs.is_rational()) {
    const Rational s = rhs.coeffs_[0];
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  if (is_rational()) {
    const Rational s = coeffs_[0];
    *this = rhs;
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  std::vector<Rational> product(2 * coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
      if (sgn(rhs.coeffs_[j]) == 0) continue;
      product[i + j] += coeffs_[i] * rhs.coeffs_[j];
    }
  }
  reduce_power_form(product);
  return *this;
}

CycloNumber& CycloNumber::operator/=(const CycloNumber& rhs) { return *this *= rhs.inverse(); }

CycloNumber CycloNumber::inverse() const {
  if (is_zero()) throw DomainError("division by zero in Q(zeta_" + std::to_string(order()) + ")");
  if (is_rational()) return rational(order(), Rational(1 / coeffs_[0]));
  // Extended Euclid: track s with s*a == r (mod Phi_N).
  RatPoly r0;
  for (long long c : field_->modulus()) r0.emplace_back(static_cast<long>(c));
  RatPoly r1 = coeffs_;
  trim(r1);
  RatPoly s0;
  RatPoly s1{Rational(1)};
  while (!(r1.size() == 1)) {
    RatPoly q, r;
    divmod(r0, r1, q, r);
    RatPoly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (r1.empty()) throw InconsistencyError("cyclotomic modulus is not irreducible");
  }
  const Rational lead = r1[0];
  for (auto& c : s1) c /= lead;
  return from_power_coeffs(order(), s1);
}

CycloNumber CycloNumber::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  CycloNumber result = one(order());
  CycloNumber base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

bool operator==(const CycloNumber& a, const CycloNumber& b) {
  if (a.order() == b.order()) return a.coeffs_ == b.coeffs_;
  try {
    const int n = CycloNumber::common_order(a, b);
    return a.embed(n).coeffs_ == b.embed(n).coeffs_;
  } catch (const DomainError&) {
    return a.is_rational() && b.is_rational() && a.coeffs_[0] == b.coeffs_[0];
  }
}

std::complex<long double> CycloNumber::approx() const {
  const std::complex<long double> z = field_->zeta_approx();
  std::complex<long double> acc = 0;
  // Horner in zeta.
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + static_cast<long double>(coeffs_[k].get_d());
  return acc;
}

double CycloNumber::coefficient_l1() const {
  double s = 0;
  for (const auto& c : coeffs_) s += std::abs(c.get_d());
  return s;
}

std::string CycloNumber::to_string() const {
  std::string out;
  const std::string n = std::to_string(order());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Rational& c = coeffs_[k];
    if (sgn(c) == 0) continue;
    const bool negative = sgn(c) < 0;
    Rational mag = abs(c);
    if (!out.empty() || negative) out += negative ? "-" : "+";
    if (k == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "z" + n;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const CycloNumber& x) { return os << x.to_string(); }

CycloNumber CycloNumber::parse(std::string_view text, int order) {
  CycloNumber total = zero(order);
  std::size_t pos = 0;
  auto peek = [&]() -> char { return pos < text.size() ? text[pos] : '\0'; };
  auto read_digits = [&](std::string& out) {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    out.assign(text.substr(start, pos - start));
    return pos > start;
  };
  if (text.empty()) parse_fail("empty coefficient", text, 0, 0);
  for (char ch : text) {
    if (ch == '.' || ch == 'e' || ch == 'E') {
      parse_fail("floating literal not allowed in exact coefficient", text, 0, text.size());
    }
  }
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = peek() == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      parse_fail("expected '+' or '-'", text, pos, 1);
    }
    first = false;
    CycloNumber term = CycloNumber::rational(order, Rational(sign));
    bool need_factor = true;
    while (need_factor) {
      const std::size_t start = pos;
      if (peek() == 'z') {
        ++pos;
        std::string digits;
        if (!read_digits(digits)) parse_fail("expected conductor after 'z'", text, start, pos - start + 1);
        const long conductor = std::stol(digits);
        if (conductor < 1 || order % conductor != 0) {
          parse_fail("root of unity z" + digits + " not in Q(zeta_" + std::to_string(order) + ")", text,
                     start, pos - start);
        }
        long exponent = 1;
        if (peek() == '^') {
          ++pos;
          int esign = 1;
          if (peek() == '-') {
            esign = -1;
            ++pos;
          }
          if (!read_digits(digits)) parse_fail("expected exponent after '^'", text, start, pos - start + 1);
          exponent = esign * std::stol(digits);
        }
        term *= CycloNumber::zeta(order, exponent * (order / conductor));
      } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
        std::string num;
        read_digits(num);
        std::string den = "1";
        if (peek() == '/') {
          ++pos;
          if (!read_digits(den)) parse_fail("expected denominator", text, start, pos - start + 1);
          if (den.find_first_not_of('0') == std::string::npos)
            parse_fail("zero denominator", text, start, pos - start);
        }
        Rational value{mpz_class(num), mpz_class(den)};
        value.canonicalize();
        term *= CycloNumber::rational(order, value);
      } else {
        parse_fail("unexpected character", text, pos, 1);
      }
      if (peek() == '*') {
        ++pos;
      } else {
        need_factor = false;
      }
    }
    total += term;
  }
  return total;
}

}  // namespace fermatlab
