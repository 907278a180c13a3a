#pragma once

#include "glpath/svd.hpp"

namespace glpath {

// Numerical rank of a matrix together with the cutoff that produced it: the
// rank counts singular values above tau * max(sigma_1, 1).
struct StratumLabel {
  int n = 0;
  int rank = 0;
  double tau = kRankTol;
};

StratumLabel classify_rank(const Matrix& a, double tau = kRankTol);

// Smallest singular value: the Frobenius distance to the nearest singular
// matrix.
double distance_to_variety(const Matrix& a);

// Nearest matrix of rank at most r (singular value truncation).
Matrix project_to_rank(const Matrix& a, int r);

// Unit Frobenius norm direction d such that a + t d has rank k+1 for small
// t > 0 and stays singular when k+1 < n. Requires classify_rank(a) == k and
// k <= n-2.
Matrix rank_bump_direction(const Matrix& a, int k);

// Invertible factors p, q such that p * a * q is the identity block of size
// rank padded with zeros.
struct NormalForm {
  Matrix p;
  Matrix q;
  int rank = 0;
};

NormalForm normalize_stratum_point(const Matrix& a, double tau = kRankTol);

}  // namespace glpath
