#pragma once

#include <complex>
#include <vector>

#include "fermatlab/unipoly.hpp"

namespace fermatlab {

/// A root approximation together with a disk radius guaranteed to contain
/// exactly one root of the polynomial it was isolated from.
struct IsolatedRoot {
  std::complex<long double> center;
  long double radius = 0;
  /// The root is known to be 0 exactly.
  bool exact_zero = false;
};

/// Roots of a squarefree polynomial, each enclosed in a disk of radius
/// deg * |P/P'| (inflated for rounding). Disks are pairwise disjoint, so each
/// holds exactly one root. A root at the origin is detected exactly.
/// Throws RootIsolationError when the disks cannot be separated.
std::vector<IsolatedRoot> isolate_roots(const UniPoly& squarefree);

}  // namespace fermatlab
