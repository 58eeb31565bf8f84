#include "fermatlab/unipoly.hpp"

#include "fermatlab/errors.hpp"

namespace fermatlab {

UniPoly::UniPoly(std::vector<CycloNumber> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::from_multipoly(const MultiPoly& f) {
  if (f.nvars() != 1) throw PreconditionError("univariate conversion needs exactly one variable");
  std::vector<CycloNumber> c(static_cast<std::size_t>(std::max(f.total_degree(), -1) + 1));
  for (const auto& [e, v] : f.terms()) c[static_cast<std::size_t>(e[0])] = v;
  return UniPoly(std::move(c));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  const CycloNumber inv = leading().inverse();
  std::vector<CycloNumber> c = coeffs_;
  for (auto& x : c) x *= inv;
  return UniPoly(std::move(c));
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<CycloNumber> c(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) c[k - 1] = coeffs_[k] * CycloNumber(static_cast<long>(k));
  return UniPoly(std::move(c));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<CycloNumber> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<CycloNumber> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<CycloNumber> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(std::move(c));
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    if (!(a.coeffs_[i] == b.coeffs_[i])) return false;
  return true;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
  if (divisor.is_zero()) throw DomainError("univariate division by zero");
  std::vector<CycloNumber> rest = coeffs_;
  const std::size_t db = divisor.coeffs_.size();
  if (rest.size() < db) return {UniPoly(), *this};
  std::vector<CycloNumber> q(rest.size() - db + 1);
  const CycloNumber lead_inv = divisor.leading().inverse();
  for (std::size_t shift = q.size(); shift-- > 0;) {
    const CycloNumber c = rest[shift + db - 1] * lead_inv;
    q[shift] = c;
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i < db; ++i) rest[shift + i] -= c * divisor.coeffs_[i];
  }
  rest.resize(db - 1);
  return {UniPoly(std::move(q)), UniPoly(std::move(rest))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a.monic();
  UniPoly y = b.monic();
  while (!y.is_zero()) {
    UniPoly r = x.divmod(y).second.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& f) {
  if (f.is_zero()) throw PreconditionError("squarefree decomposition of the zero polynomial");
  // Yun's algorithm (characteristic zero).
  std::vector<std::pair<UniPoly, int>> out;
  const UniPoly fm = f.monic();
  const UniPoly df = fm.derivative();
  UniPoly a = gcd(fm, df);
  if (a.is_zero()) a = UniPoly({CycloNumber(1L)});
  UniPoly b = fm.divmod(a).first;
  UniPoly c = df.divmod(a).first;
  UniPoly d = c - b.derivative();
  for (int k = 1; b.degree() > 0; ++k) {
    UniPoly a_k = gcd(b, d);
    if (a_k.degree() > 0) out.emplace_back(a_k, k);
    b = b.divmod(a_k).first;
    c = d.divmod(a_k).first;
    d = c - b.derivative();
  }
  return out;
}

}  // namespace fermatlab
