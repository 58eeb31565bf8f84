#pragma once

#include <vector>

#include "fermatlab/cyclo.hpp"
#include "fermatlab/multipoly.hpp"

namespace fermatlab {

using FieldMatrix = std::vector<std::vector<CycloNumber>>;
using PolyMatrix = std::vector<std::vector<MultiPoly>>;

struct EchelonForm {
  FieldMatrix rows;  // reduced row echelon form
  std::vector<std::size_t> pivots;
};

EchelonForm reduced_row_echelon(FieldMatrix m);
std::size_t rank(const FieldMatrix& m);
CycloNumber determinant(FieldMatrix m);

/// Basis of {x : m x = 0}. Each vector has its free coordinate set to 1 and is
/// negated when its first nonzero entry is a negative rational.
std::vector<std::vector<CycloNumber>> kernel_basis(const FieldMatrix& m, std::size_t ncols);

/// Cofactor expansion memoized over column subsets; skips zero entries.
MultiPoly determinant_cofactor(const PolyMatrix& m);
/// Fraction-free Bareiss elimination with exact polynomial division.
MultiPoly determinant_bareiss(const PolyMatrix& m);
/// Chooses cofactor expansion for sparse matrices and Bareiss otherwise.
MultiPoly determinant(const PolyMatrix& m);

FieldMatrix evaluate(const PolyMatrix& m, std::span<const CycloNumber> point);

}  // namespace fermatlab
