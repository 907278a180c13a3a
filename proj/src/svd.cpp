#include "glpath/svd.hpp"

#include <cmath>
#include <stdexcept>

namespace glpath {

namespace {
// Entries of a unit vector below this are ignored when picking the sign
// anchor, so roundoff-level noise cannot flip a column.
constexpr double kSignAnchorTol = 1e-9;
}

SvdFactorization svd(const Matrix& a) {
  check_square(a, "svd");
  const int n = static_cast<int>(a.rows());

  Eigen::JacobiSVD<Matrix> jac(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdFactorization f;
  f.u = jac.matrixU();
  f.sigma = jac.singularValues();
  f.v = jac.matrixV();

  for (int j = 0; j < n; ++j) {
    int anchor = 0;
    while (anchor < n - 1 && std::fabs(f.u(anchor, j)) <= kSignAnchorTol) ++anchor;
    if (f.u(anchor, j) < 0.0) {
      f.u.col(j) = -f.u.col(j);
      f.v.col(j) = -f.v.col(j);
    }
  }

  const double residual = (f.reconstruct() - a).norm();
  if (!(residual <= 1e-10 * (1.0 + a.norm()))) {
    throw std::runtime_error("svd: decomposition did not converge");
  }
  return f;
}

}  // namespace glpath
