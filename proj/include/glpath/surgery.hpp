#pragma once

#include "glpath/path.hpp"
#include "glpath/poly.hpp"

namespace glpath {

// Decomposition of the chord from a to b by the roots of the determinant
// along it. interval_signs has one entry per open interval between
// consecutive boundaries 0, crossings..., 1: +1 or -1 for the sign of the
// determinant there, 0 when it vanishes identically. Tangential roots (no
// sign change across them) are kept in crossings.
struct SegmentDecomposition {
  DetPolynomial poly;
  std::vector<double> crossings;    // ascending, inside (0, 1)
  std::vector<int> interval_signs;  // crossings.size() + 1 entries
};

SegmentDecomposition split_segment(const Matrix& a, const Matrix& b);

// Counters reported by variety_arc: how often the plain chord projection had
// to be refined, and how often a stretch was routed through a deeper stratum
// because the projection stayed discontinuous.
struct ArcStats {
  int refined = 0;
  int rerouted = 0;
};

// Path on the singular matrices between two singular endpoints, built by
// projecting chord samples to rank n-1. Initial node spacing is
// resolution * |p - q|; node gaps beyond 10x that are bisected up to four
// rounds and, where a genuine discontinuity of the projection persists, the
// offending stretch is routed through deeper ranks (through the zero matrix
// in the worst case, whose radial segments stay singular exactly).
PolylinePath variety_arc(const Matrix& p, const Matrix& q, double resolution,
                         ArcStats* stats = nullptr);

// Pushes every node of a path of rank <= k matrices into rank exactly k+1
// (still singular when k+1 < n) by a rank-one bump of magnitude
// eps * node scale. The bump direction is carried along the path: each node
// reuses the previous direction projected onto its own admissible block, so
// the displacement varies as slowly as the path itself.
PolylinePath ascend_stratum(const PolylinePath& path, int k, double eps);

// Pushes every node of a path of rank n-1 matrices off the singular set
// along the cofactor normal, which points into det > 0. eps halves up to 20
// times until nodes and segment midpoints are all positive.
PolylinePath pushout_to_glplus(const PolylinePath& path, double eps);

// Connects two matrices with positive determinant through the sphere of the
// given Frobenius radius: each endpoint retracts along its polar
// decomposition to its rotation factor, and the rotations are joined by a
// geodesic in the rotation group; every node is rescaled to the sphere. The
// determinant is positive on the whole path by construction.
PolylinePath sphere_connect(const Matrix& p, const Matrix& q, double radius);

// End-to-end construction of a path from a to b through matrices of positive
// determinant, with a verified certificate. On instances where no positive
// path is found after all eps halvings the certificate reports
// feasible = false rather than a silently wrong answer.
PathCertificate build_path(const Matrix& a, const Matrix& b,
                           double eps = kDefaultEps);

}  // namespace glpath
