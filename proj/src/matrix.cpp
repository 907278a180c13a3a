#include "glpath/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace glpath {

double det(const Matrix& a) {
  check_square(a, "det");
  if (a.rows() == 1) return a(0, 0);
  if (a.rows() == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  return Eigen::PartialPivLU<Matrix>(a).determinant();
}

double frobenius_dist(const Matrix& a, const Matrix& b) {
  check_same_size(a, b, "frobenius_dist");
  return (a - b).norm();
}

Matrix cofactor_matrix(const Matrix& a) {
  check_square(a, "cofactor_matrix");
  const int n = static_cast<int>(a.rows());
  Matrix c(n, n);
  if (n == 1) {
    c(0, 0) = 1.0;
    return c;
  }
  Matrix minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int s = 0, ms = 0; s < n; ++s) {
          if (s == j) continue;
          minor(mr, ms) = a(r, s);
          ++ms;
        }
        ++mr;
      }
      const double m = (n == 2) ? minor(0, 0)
                                : Eigen::PartialPivLU<Matrix>(minor).determinant();
      c(i, j) = ((i + j) % 2 == 0) ? m : -m;
    }
  }
  return c;
}

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244;
}

ConeCoords2 to_cone_coords(const Matrix& a) {
  check_square(a, "to_cone_coords");
  if (a.rows() != 2) {
    throw std::invalid_argument("to_cone_coords: defined for 2x2 matrices only");
  }
  ConeCoords2 c;
  c.x = (a(0, 0) + a(1, 1)) * kInvSqrt2;
  c.y = (a(0, 1) - a(1, 0)) * kInvSqrt2;
  c.z = (a(0, 0) - a(1, 1)) * kInvSqrt2;
  c.w = (a(0, 1) + a(1, 0)) * kInvSqrt2;
  return c;
}

Matrix from_cone_coords(const ConeCoords2& c) {
  if (!(std::isfinite(c.x) && std::isfinite(c.y) && std::isfinite(c.z) &&
        std::isfinite(c.w))) {
    throw std::invalid_argument("from_cone_coords: non-finite coordinates");
  }
  Matrix a(2, 2);
  a(0, 0) = (c.x + c.z) * kInvSqrt2;
  a(1, 1) = (c.x - c.z) * kInvSqrt2;
  a(0, 1) = (c.w + c.y) * kInvSqrt2;
  a(1, 0) = (c.w - c.y) * kInvSqrt2;
  return a;
}

}  // namespace glpath
