#pragma once
// Chord-based shortening of polyline paths inside an open region, and grid
// Dijkstra distances for planar regions.

#include <functional>

#include "glpath/path.hpp"
#include "glpath/types.hpp"

namespace glpath {

// An open region {margin > 0} of R^d. `gradient` may be left empty; a central
// difference fallback is used then. `scale` converts positions into a local
// margin unit so clearance thresholds are dimensionally sane; identity when
// empty. `box_lo`/`box_hi` optionally bound the search area for grid work.
struct RegionOracle {
  int dimension = 0;
  std::function<double(const Vector&)> margin;
  std::function<Vector(const Vector&)> gradient;
  std::function<double(const Vector&)> scale;
  bool has_box = false;
  Vector box_lo;
  Vector box_hi;
};

// The positive-determinant matrices, as a region of R^(n*n) in column-major
// coordinates.
RegionOracle glplus_oracle(int n);

// The planar region {(x, y) : x^2 - y^3 > 0}, whose boundary has a cusp at
// the origin.
RegionOracle cusp_oracle();

// Pulls interior nodes toward the midpoint of their neighbors while keeping
// every node inside the region with clearance delta (in the oracle's margin
// unit). Endpoints stay fixed. The result is never longer than the input.
PolylinePath shorten_path(const PolylinePath& path, const RegionOracle& oracle,
                          int iterations = 1000, double delta = 1e-6);

struct GridPathResult {
  double length = 0.0;
  bool reachable = false;
  int cells_x = 0;
  int cells_y = 0;
};

// Shortest 8-neighbor walk between two interior points of a planar region,
// over a uniform grid of the given spacing.
GridPathResult grid_intrinsic_distance(const Vector& p, const Vector& q,
                                       const RegionOracle& oracle,
                                       double resolution);

struct CuspProbe {
  double h = 0.0;
  double d_ext = 0.0;
  double d_int = 0.0;
  double ratio = 0.0;
};

// Distances between mirrored points just outside the two walls of the cusp
// horn, at height h. The intrinsic route has to round the cusp tip, so the
// ratio grows like h^(-1/2) as h shrinks and no bilipschitz bound exists.
CuspProbe cusp_probe(double h, double resolution);

double cusp_ratio(double h, double resolution);

}  // namespace glpath
