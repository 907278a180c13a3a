#pragma once

#include "glpath/matrix.hpp"
#include "glpath/path.hpp"

namespace glpath {

// Point of the singular cone in 2x2 matrix space, in polar form: r is the
// Frobenius norm, alpha and beta the angles of the two circle factors of the
// level torus, both in [0, 2pi).
struct TorusPoint {
  double r = 0;
  double alpha = 0;
  double beta = 0;
};

// Requires a 2x2 matrix on the cone (|det| <= 1e-9 * norm^2) with positive
// norm.
TorusPoint torus_point_from_matrix(const Matrix& a);
Matrix matrix_from_torus_point(const TorusPoint& p);

// Shortest flat geodesic between two points of the level torus at radius r:
// both angle differences interpolate independently along their shortest
// wrap. Discretized so node spacing stays below 1e-3 * r; the polyline
// length matches (r / sqrt(2)) * hypot(dalpha, dbeta) to within 1e-6 * r.
PolylinePath torus_geodesic(const TorusPoint& p, const TorusPoint& q, double r);

// Path lying on the singular cone between two of its points: the farther
// endpoint slides radially to the level of the nearer one, followed by a
// level torus geodesic. Straight segment when either endpoint is the apex.
// Length is at most |r_p - r_q| + pi * min(r_p, r_q).
PolylinePath cone_path(const Matrix& p, const Matrix& q);

// Full 2x2 pipeline: split the chord at its singular crossings, replace the
// negative stretches by cone paths pushed into det > 0 along the cofactor
// normal, reroute across a small sphere near the apex, and certify the
// result. Throws if no positive path is found after all eps halvings.
PathCertificate surgery2(const Matrix& a, const Matrix& b,
                         double eps = kDefaultEps);

}  // namespace glpath
