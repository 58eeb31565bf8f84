#include "fermatlab/linalg.hpp"

#include <bit>
#include <unordered_map>

#include "fermatlab/errors.hpp"

namespace fermatlab {

EchelonForm reduced_row_echelon(FieldMatrix m) {
  EchelonForm out;
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows == 0 ? 0 : m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < nrows; ++col) {
    std::size_t pivot = row;
    while (pivot < nrows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == nrows) continue;
    std::swap(m[row], m[pivot]);
    const CycloNumber inv = m[row][col].inverse();
    for (std::size_t j = col; j < ncols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < nrows; ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      const CycloNumber factor = m[i][col];
      for (std::size_t j = col; j < ncols; ++j) {
        if (!m[row][j].is_zero()) m[i][j] -= factor * m[row][j];
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const FieldMatrix& m) { return reduced_row_echelon(m).pivots.size(); }

CycloNumber determinant(FieldMatrix m) {
  const std::size_t n = m.size();
  CycloNumber det(1L);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return CycloNumber();
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    const CycloNumber inv = m[col][col].inverse();
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m[i][col].is_zero()) continue;
      const CycloNumber factor = m[i][col] * inv;
      for (std::size_t j = col; j < n; ++j) m[i][j] -= factor * m[col][j];
    }
  }
  return det;
}

std::vector<std::vector<CycloNumber>> kernel_basis(const FieldMatrix& m, std::size_t ncols) {
  const EchelonForm ech = reduced_row_echelon(m);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<std::vector<CycloNumber>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<CycloNumber> v(ncols);
    v[free] = CycloNumber(1L);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][free];
    for (const auto& x : v) {
      if (x.is_zero()) continue;
      if (x.is_rational() && sgn(x.rational_value()) < 0)
        for (auto& y : v) y = -y;
      break;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

int poly_nvars(const PolyMatrix& m) {
  if (m.empty() || m.front().empty()) throw PreconditionError("determinant of an empty matrix");
  for (const auto& row : m)
    if (row.size() != m.size()) throw PreconditionError("determinant of a non-square matrix");
  return m.front().front().nvars();
}

}  // namespace

MultiPoly determinant_cofactor(const PolyMatrix& m) {
  const int nvars = poly_nvars(m);
  const std::size_t n = m.size();
  if (n > 24) throw PreconditionError("cofactor expansion limited to 24x24");
  // minors[mask] = determinant of rows 0..popcount(mask)-1 restricted to columns in mask.
  std::unordered_map<std::uint32_t, MultiPoly> level{{0U, MultiPoly::constant(nvars, CycloNumber(1L))}};
  for (std::size_t row = 0; row < n; ++row) {
    std::unordered_map<std::uint32_t, MultiPoly> next;
    for (const auto& [mask, minor] : level) {
      if (minor.is_zero()) continue;
      for (std::size_t col = 0; col < n; ++col) {
        const std::uint32_t bit = 1U << col;
        if (mask & bit) continue;
        const MultiPoly& entry = m[row][col];
        if (entry.is_zero()) continue;
        // Sign of placing column `col` last among the chosen columns.
        const int after = std::popcount(mask & ~((bit << 1) - 1));
        MultiPoly term = entry * minor;
        if (after % 2 == 1) term = -term;
        auto [it, inserted] = next.try_emplace(mask | bit, std::move(term));
        if (!inserted) it->second += term;
      }
    }
    level = std::move(next);
  }
  const std::uint32_t full = n == 32 ? ~0U : ((1U << n) - 1);
  auto it = level.find(full);
  return it == level.end() ? MultiPoly(nvars) : it->second;
}

MultiPoly determinant_bareiss(const PolyMatrix& input) {
  const int nvars = poly_nvars(input);
  PolyMatrix m = input;
  const std::size_t n = m.size();
  bool negate = false;
  MultiPoly prev = MultiPoly::constant(nvars, CycloNumber(1L));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && m[pivot][k].is_zero()) ++pivot;
    if (pivot == n) return MultiPoly(nvars);
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        if (k > 0) {
          auto q = num.divide_exact(prev);
          if (!q) throw InconsistencyError("Bareiss step is not an exact division");
          num = std::move(*q);
        }
        m[i][j] = std::move(num);
      }
      m[i][k] = MultiPoly(nvars);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

MultiPoly determinant(const PolyMatrix& m) {
  std::size_t zeros = 0;
  std::size_t total = 0;
  for (const auto& row : m) {
    for (const auto& e : row) {
      zeros += e.is_zero() ? 1 : 0;
      ++total;
    }
  }
  return 2 * zeros > total ? determinant_cofactor(m) : determinant_bareiss(m);
}

FieldMatrix evaluate(const PolyMatrix& m, std::span<const CycloNumber> point) {
  FieldMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].reserve(m[i].size());
    for (const auto& e : m[i]) out[i].push_back(e.eval(point));
  }
  return out;
}

}  // namespace fermatlab
