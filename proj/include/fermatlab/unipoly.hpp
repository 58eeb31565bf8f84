#pragma once

#include <utility>
#include <vector>

#include "fermatlab/cyclo.hpp"
#include "fermatlab/multipoly.hpp"

namespace fermatlab {

/// Dense univariate polynomial over Q(zeta_N), lowest degree first, no
/// trailing zeros. The zero polynomial is the empty vector.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<CycloNumber> coeffs);
  /// Requires f.nvars() == 1.
  static UniPoly from_multipoly(const MultiPoly& f);

  const std::vector<CycloNumber>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const CycloNumber& leading() const { return coeffs_.back(); }

  UniPoly monic() const;
  UniPoly derivative() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly& a, const UniPoly& b);

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;

 private:
  void trim();
  std::vector<CycloNumber> coeffs_;
};

/// Monic gcd; gcd(0, 0) is 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Squarefree decomposition: pairwise coprime monic squarefree factors with
/// their multiplicities, so that f = lc(f) * prod factor^multiplicity.
/// Constant factors are omitted. Requires f nonzero.
std::vector<std::pair<UniPoly, int>> squarefree_decomposition(const UniPoly& f);

}  // namespace fermatlab
