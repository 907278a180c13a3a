#pragma once

#include "glpath/types.hpp"

namespace glpath {

// Determinant via LU with partial pivoting.
double det(const Matrix& a);

double frobenius_dist(const Matrix& a, const Matrix& b);

// Matrix of signed minors, equal to the gradient of det with respect to the
// entries. Identically zero when the rank is at most n-2.
Matrix cofactor_matrix(const Matrix& a);

// Rotated orthonormal coordinates on 2x2 matrices in which the singular
// matrices form the cone x^2 + y^2 = z^2 + w^2 and the determinant is
// (x^2 + y^2 - z^2 - w^2) / 2. The change of basis preserves Frobenius norm.
struct ConeCoords2 {
  double x = 0;
  double y = 0;
  double z = 0;
  double w = 0;
};

ConeCoords2 to_cone_coords(const Matrix& a);  // 2x2 only
Matrix from_cone_coords(const ConeCoords2& c);

}  // namespace glpath
