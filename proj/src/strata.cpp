#include "glpath/strata.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace glpath {

StratumLabel classify_rank(const Matrix& a, double tau) {
  check_square(a, "classify_rank");
  if (!(tau > 0.0 && tau <= 1e-2)) {
    throw std::invalid_argument("classify_rank: tau must lie in (0, 1e-2]");
  }
  const SvdFactorization f = svd(a);
  const double cutoff = tau * std::max(f.sigma(0), 1.0);
  StratumLabel label;
  label.n = static_cast<int>(a.rows());
  label.tau = tau;
  for (int i = 0; i < label.n; ++i) {
    if (f.sigma(i) > cutoff) ++label.rank;
  }
  return label;
}

double distance_to_variety(const Matrix& a) {
  check_square(a, "distance_to_variety");
  return svd(a).sigma(a.rows() - 1);
}

Matrix project_to_rank(const Matrix& a, int r) {
  check_square(a, "project_to_rank");
  const int n = static_cast<int>(a.rows());
  if (r < 0 || r > n) {
    throw std::invalid_argument("project_to_rank: rank " + std::to_string(r) +
                                " outside [0, " + std::to_string(n) + "]");
  }
  if (r == n) return a;
  if (r == 0) return Matrix::Zero(n, n);
  const SvdFactorization f = svd(a);
  Vector trunc = f.sigma;
  trunc.tail(n - r).setZero();
  return f.u * trunc.asDiagonal() * f.v.transpose();
}

Matrix rank_bump_direction(const Matrix& a, int k) {
  check_square(a, "rank_bump_direction");
  const int n = static_cast<int>(a.rows());
  if (k > n - 2) {
    throw std::invalid_argument(
        "rank_bump_direction: bumping rank " + std::to_string(k) +
        " would leave the singular matrices (need k <= n-2)");
  }
  const StratumLabel label = classify_rank(a);
  if (label.rank != k) {
    throw std::invalid_argument("rank_bump_direction: matrix has rank " +
                                std::to_string(label.rank) + ", expected " +
                                std::to_string(k));
  }
  const SvdFactorization f = svd(a);
  return f.u.col(k) * f.v.col(k).transpose();
}

NormalForm normalize_stratum_point(const Matrix& a, double tau) {
  check_square(a, "normalize_stratum_point");
  const int n = static_cast<int>(a.rows());
  const StratumLabel label = classify_rank(a, tau);
  const SvdFactorization f = svd(a);
  Vector scale = Vector::Ones(n);
  for (int i = 0; i < label.rank; ++i) scale(i) = 1.0 / f.sigma(i);
  NormalForm nf;
  nf.p = scale.asDiagonal() * f.u.transpose();
  nf.q = f.v;
  nf.rank = label.rank;
  return nf;
}

}  // namespace glpath
