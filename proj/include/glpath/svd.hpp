#pragma once

#include "glpath/types.hpp"

namespace glpath {

// Full decomposition a = u * sigma.asDiagonal() * v^T with singular values in
// descending order. Column signs are normalized so the first entry of each
// left singular vector that is not negligibly small is nonnegative, which
// makes the factors reproducible run to run.
struct SvdFactorization {
  Matrix u;
  Vector sigma;
  Matrix v;

  Matrix reconstruct() const { return u * sigma.asDiagonal() * v.transpose(); }
};

SvdFactorization svd(const Matrix& a);

}  // namespace glpath
