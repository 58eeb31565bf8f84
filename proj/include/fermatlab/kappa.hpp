#pragma once

#include "fermatlab/errors.hpp"

namespace fermatlab {

/// Truncation and ramification weight max{n + 1 - p, 1}.
inline int kappa(int p, int n) {
  if (p < 1 || n < 1) throw PreconditionError("kappa needs p >= 1 and n >= 1");
  return p < n ? n + 1 - p : 1;
}

}  // namespace fermatlab
