#include "fermatlab/multipoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fermatlab/errors.hpp"

namespace fermatlab {

namespace {

void check_exponent(const Exponent& e, int nvars) {
  if (static_cast<int>(e.size()) != nvars)
    throw PreconditionError("exponent length " + std::to_string(e.size()) + " does not match " +
                            std::to_string(nvars) + " variables");
  for (int k : e)
    if (k < 0) throw PreconditionError("negative exponent");
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

void accumulate(MultiPoly::TermMap& terms, const Exponent& e, const CycloNumber& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

}  // namespace

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw PreconditionError("negative variable count");
}

MultiPoly MultiPoly::constant(int nvars, const CycloNumber& c) {
  MultiPoly f(nvars);
  f.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
  return f;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars) throw PreconditionError("variable index out of range");
  Exponent e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(index)] = 1;
  return monomial(e, CycloNumber(1L));
}

MultiPoly MultiPoly::monomial(const Exponent& exponent, const CycloNumber& c) {
  MultiPoly f(static_cast<int>(exponent.size()));
  f.add_term(exponent, c);
  return f;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return kZeroDegree;
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int k : e) d += k;
    deg = std::max(deg, d);
  }
  return deg;
}

int MultiPoly::degree_in(int var) const {
  if (terms_.empty()) return kZeroDegree;
  int deg = 0;
  for (const auto& [e, c] : terms_) deg = std::max(deg, e[static_cast<std::size_t>(var)]);
  return deg;
}

CycloNumber MultiPoly::coeff(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? CycloNumber() : it->second;
}

int MultiPoly::field_order() const {
  int order = 1;
  for (const auto& [e, c] : terms_) {
    if (c.is_rational()) continue;
    if (order % c.order() == 0) continue;
    if (c.order() % order != 0)
      throw DomainError("polynomial mixes incompatible cyclotomic conductors");
    order = c.order();
  }
  return order;
}

double MultiPoly::max_coeff_abs() const {
  double m = 0;
  for (const auto& [e, c] : terms_) m = std::max(m, static_cast<double>(std::abs(c.approx())));
  return m;
}

bool MultiPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int deg = total_degree();
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int k : e) d += k;
    if (d != deg) return false;
  }
  return true;
}

void MultiPoly::add_term(const Exponent& exponent, const CycloNumber& c) {
  check_exponent(exponent, nvars_);
  accumulate(terms_, exponent, c);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
  if (rhs.nvars_ != nvars_) throw PreconditionError("variable count mismatch in polynomial sum");
  for (const auto& [e, c] : rhs.terms_) accumulate(terms_, e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
  if (rhs.nvars_ != nvars_) throw PreconditionError("variable count mismatch in polynomial difference");
  for (const auto& [e, c] : rhs.terms_) accumulate(terms_, e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_) throw PreconditionError("variable count mismatch in polynomial product");
  MultiPoly out(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) accumulate(out.terms_, add_exponents(ea, eb), ca * cb);
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& rhs) { return *this = *this * rhs; }

MultiPoly& MultiPoly::operator*=(const CycloNumber& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
  auto ib = b.terms_.begin();
  for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  }
  return true;
}

MultiPoly MultiPoly::pow(unsigned exponent) const {
  MultiPoly result = constant(nvars_, CycloNumber(1L));
  MultiPoly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::derivative(int var, int times) const {
  if (var < 0 || var >= nvars_) throw PreconditionError("derivative variable out of range");
  MultiPoly out(nvars_);
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e[v] < times) continue;
    long factor = 1;
    for (int k = 0; k < times; ++k) factor *= e[v] - k;
    Exponent next = e;
    next[v] -= times;
    accumulate(out.terms_, next, c * CycloNumber(factor));
  }
  return out;
}

MultiPoly MultiPoly::diff(const DiffWord& word) const {
  const Exponent alpha = word.exponent(nvars_);
  MultiPoly out = *this;
  for (int v = 0; v < nvars_; ++v) {
    if (alpha[static_cast<std::size_t>(v)] > 0) out = out.derivative(v, alpha[static_cast<std::size_t>(v)]);
  }
  return out;
}

CycloNumber MultiPoly::eval(std::span<const CycloNumber> point) const {
  if (static_cast<int>(point.size()) != nvars_) throw PreconditionError("evaluation point has wrong dimension");
  // Cache powers per variable.
  std::vector<std::vector<CycloNumber>> powers(static_cast<std::size_t>(nvars_));
  for (int v = 0; v < nvars_; ++v) {
    const int deg = std::max(degree_in(v), 0);
    auto& pw = powers[static_cast<std::size_t>(v)];
    pw.reserve(static_cast<std::size_t>(deg) + 1);
    pw.emplace_back(1L);
    for (int k = 1; k <= deg; ++k) pw.push_back(pw.back() * point[static_cast<std::size_t>(v)]);
  }
  CycloNumber acc;
  for (const auto& [e, c] : terms_) {
    CycloNumber term = c;
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] > 0) term *= powers[v][static_cast<std::size_t>(e[v])];
    acc += term;
  }
  return acc;
}

MultiPoly MultiPoly::compose(std::span<const MultiPoly> subs) const {
  if (static_cast<int>(subs.size()) != nvars_) throw PreconditionError("composition needs one substitute per variable");
  const int target_vars = subs.empty() ? 0 : subs.front().nvars();
  for (const auto& s : subs)
    if (s.nvars() != target_vars) throw PreconditionError("substitutes disagree on variable count");
  std::vector<std::vector<MultiPoly>> powers(subs.size());
  for (std::size_t v = 0; v < subs.size(); ++v) {
    const int deg = std::max(degree_in(static_cast<int>(v)), 0);
    powers[v].push_back(constant(target_vars, CycloNumber(1L)));
    for (int k = 1; k <= deg; ++k) powers[v].push_back(powers[v].back() * subs[v]);
  }
  MultiPoly out(target_vars);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(target_vars, c);
    for (std::size_t v = 0; v < e.size(); ++v)
      if (e[v] > 0) term *= powers[v][static_cast<std::size_t>(e[v])];
    out += term;
  }
  return out;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& divisor) const {
  if (divisor.is_zero()) throw DomainError("polynomial division by zero");
  if (divisor.nvars_ != nvars_) throw PreconditionError("variable count mismatch in division");
  MultiPoly quotient(nvars_);
  MultiPoly rest = *this;
  const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
  const CycloNumber lead_inv = lead_c.inverse();
  while (!rest.is_zero()) {
    const auto& [e, c] = *rest.terms_.rbegin();
    Exponent shift(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      shift[i] = e[i] - lead_e[i];
      if (shift[i] < 0) return std::nullopt;
    }
    const MultiPoly step = monomial(shift, c * lead_inv);
    quotient += step;
    rest -= step * divisor;
  }
  return quotient;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += ' ';
    out += c.to_string();
    out += '@';
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(e[i]);
    }
  }
  return out;
}

NumericPoly::NumericPoly(const MultiPoly& f) : nvars_(f.nvars()) {
  for (const auto& [e, c] : f.terms()) {
    const auto a = c.approx();
    terms_.push_back({e, {static_cast<double>(a.real()), static_cast<double>(a.imag())}});
    for (int k : e) max_power_ = std::max(max_power_, k);
  }
}

std::complex<double> NumericPoly::operator()(std::span<const std::complex<double>> z) const {
  const std::size_t stride = static_cast<std::size_t>(max_power_) + 1;
  thread_local std::vector<std::complex<double>> powers;
  powers.assign(stride * static_cast<std::size_t>(nvars_), {1.0, 0.0});
  for (std::size_t v = 0; v < static_cast<std::size_t>(nvars_); ++v) {
    for (std::size_t k = 1; k < stride; ++k) powers[v * stride + k] = powers[v * stride + k - 1] * z[v];
  }
  std::complex<double> acc = 0;
  for (const auto& t : terms_) {
    std::complex<double> m = t.coeff;
    for (std::size_t v = 0; v < t.exponent.size(); ++v)
      if (t.exponent[v] > 0) m *= powers[v * stride + static_cast<std::size_t>(t.exponent[v])];
    acc += m;
  }
  return acc;
}

ComplexPoint::ComplexPoint(std::vector<std::complex<double>> coords) : coords_(std::move(coords)) {
  for (const auto& c : coords_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw PreconditionError("non-finite coordinate");
}

EvalResult poly_eval(const MultiPoly& f, const ComplexPoint& z, std::complex<double> zeta_approx,
                     double zeta_tolerance) {
  if (static_cast<int>(z.dim()) != f.nvars()) throw PreconditionError("evaluation point has wrong dimension");
  // The session field is identified from the approximation itself; f must live in it.
  double arg = std::arg(zeta_approx);
  if (arg <= 0) arg += 2 * std::numbers::pi;
  const int order = std::abs(zeta_approx - 1.0) < 0.5 ? 1 : static_cast<int>(std::lround(2 * std::numbers::pi / arg));
  if (order % f.field_order() != 0)
    throw DomainError("polynomial over Q(zeta_" + std::to_string(f.field_order()) + ") evaluated with zeta_" +
                      std::to_string(order));
  const long double angle = 2.0L * std::numbers::pi_v<long double> / order;
  const std::complex<long double> exact(std::cos(angle), std::sin(angle));
  const double zeta_err = static_cast<double>(
      std::abs(std::complex<long double>(zeta_approx.real(), zeta_approx.imag()) - exact));
  if (zeta_err > zeta_tolerance)
    throw DomainError("root of unity approximation error " + std::to_string(zeta_err) + " exceeds tolerance");
  constexpr double u = 0x1p-53;
  const double nterms = static_cast<double>(f.size());
  std::complex<double> acc = 0;
  double bound = 0;
  for (const auto& [e, c] : f.terms()) {
    const CycloNumber cn = c.embed(order);
    std::complex<double> coeff = 0;
    double coeff_err = 0;
    for (std::size_t k = cn.coeffs().size(); k-- > 0;) {
      coeff = coeff * zeta_approx + cn.coeffs()[k].get_d();
      coeff_err += std::abs(cn.coeffs()[k].get_d()) * (static_cast<double>(k) * zeta_err + (static_cast<double>(k) + 2) * u);
    }
    std::complex<double> m = 1;
    int degree = 0;
    for (std::size_t v = 0; v < e.size(); ++v) {
      for (int k = 0; k < e[v]; ++k) m *= z.coords()[v];
      degree += e[v];
    }
    acc += coeff * m;
    bound += (std::abs(coeff) * (degree + 2 + nterms) * u + coeff_err) * std::abs(m);
  }
  return {acc, 1.01 * bound};
}

}  // namespace fermatlab
