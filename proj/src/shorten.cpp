#include "glpath/shorten.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "glpath/matrix.hpp"

namespace glpath {

namespace {

Vector flatten(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unflatten(const Vector& v, int rows, int cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Vector fd_gradient(const std::function<double(const Vector&)>& f,
                   const Vector& v) {
  const double h = 1e-6 * (1.0 + v.norm());
  Vector g(v.size());
  Vector w = v;
  for (int i = 0; i < v.size(); ++i) {
    w(i) = v(i) + h;
    const double hi = f(w);
    w(i) = v(i) - h;
    const double lo = f(w);
    w(i) = v(i);
    g(i) = (hi - lo) / (2.0 * h);
  }
  return g;
}

double oracle_scale(const RegionOracle& oracle, const Vector& v) {
  return oracle.scale ? oracle.scale(v) : 1.0;
}

Vector oracle_gradient(const RegionOracle& oracle, const Vector& v) {
  return oracle.gradient ? oracle.gradient(v) : fd_gradient(oracle.margin, v);
}

// Smallest inward push along the margin gradient that restores clearance at
// v, or v itself when none of the probed steps does.
Vector restore_clearance(const RegionOracle& oracle, const Vector& v,
                         double delta) {
  const double target = delta * oracle_scale(oracle, v);
  if (oracle.margin(v) >= target) return v;

  const Vector g = oracle_gradient(oracle, v);
  const double gn = g.norm();
  if (gn <= 0.0 || !std::isfinite(gn)) return v;
  const Vector dir = g / gn;

  double step = std::max((target - oracle.margin(v)) / gn, 1e-18);
  bool found = false;
  for (int k = 0; k < 60; ++k) {
    const Vector w = v + step * dir;
    if (oracle.margin(w) >= delta * oracle_scale(oracle, w)) {
      found = true;
      break;
    }
    step *= 2.0;
  }
  if (!found) return v;

  // Shrink back to roughly the smallest step that still clears the margin.
  double lo = 0.0;
  double hi = step;
  for (int k = 0; k < 30; ++k) {
    const double mid = 0.5 * (lo + hi);
    const Vector w = v + mid * dir;
    if (oracle.margin(w) >= delta * oracle_scale(oracle, w)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return v + hi * dir;
}

}  // namespace

RegionOracle glplus_oracle(int n) {
  if (n < 1 || n > kMaxSize) {
    throw std::invalid_argument("glplus_oracle: size out of range");
  }
  RegionOracle oracle;
  oracle.dimension = n * n;
  oracle.margin = [n](const Vector& v) { return det(unflatten(v, n, n)); };
  oracle.gradient = [n](const Vector& v) {
    return flatten(cofactor_matrix(unflatten(v, n, n)));
  };
  oracle.scale = [n](const Vector& v) {
    return std::pow(v.norm() / std::sqrt(static_cast<double>(n)),
                    static_cast<double>(n));
  };
  return oracle;
}

RegionOracle cusp_oracle() {
  RegionOracle oracle;
  oracle.dimension = 2;
  oracle.margin = [](const Vector& v) { return v(0) * v(0) - v(1) * v(1) * v(1); };
  oracle.gradient = [](const Vector& v) {
    Vector g(2);
    g(0) = 2.0 * v(0);
    g(1) = -3.0 * v(1) * v(1);
    return g;
  };
  return oracle;
}

PolylinePath shorten_path(const PolylinePath& path, const RegionOracle& oracle,
                          int iterations, double delta) {
  if (path.empty()) {
    throw std::invalid_argument("shorten_path: empty path");
  }
  if (!oracle.margin) {
    throw std::invalid_argument("shorten_path: oracle has no margin function");
  }
  if (!(delta > 0.0) || iterations < 0) {
    throw std::invalid_argument("shorten_path: bad delta or iteration count");
  }
  const int rows = static_cast<int>(path.nodes().front().rows());
  const int cols = static_cast<int>(path.nodes().front().cols());
  if (oracle.dimension != rows * cols) {
    throw std::invalid_argument("shorten_path: oracle dimension mismatch");
  }

  std::vector<Vector> v;
  v.reserve(path.size());
  for (const Matrix& node : path.nodes()) {
    v.push_back(flatten(node));
    if (!(oracle.margin(v.back()) > 0.0)) {
      throw std::invalid_argument("shorten_path: node outside the region");
    }
  }

  if (v.size() > 2) {
    for (int iter = 0; iter < iterations; ++iter) {
      double moved = 0.0;
      double sweep_scale = 0.0;
      for (size_t i = 1; i + 1 < v.size(); ++i) {
        const Vector mid = 0.5 * (v[i - 1] + v[i + 1]);
        Vector candidate = mid;
        if (oracle.margin(candidate) <
            delta * oracle_scale(oracle, candidate)) {
          candidate = restore_clearance(oracle, mid, delta);
          if (!(oracle.margin(candidate) > 0.0)) continue;
        }
        const double before =
            (v[i] - v[i - 1]).norm() + (v[i + 1] - v[i]).norm();
        const double after =
            (candidate - v[i - 1]).norm() + (v[i + 1] - candidate).norm();
        if (after <= before) {
          moved = std::max(moved, (candidate - v[i]).norm());
          v[i] = candidate;
        }
        sweep_scale = std::max(sweep_scale, v[i].norm());
      }
      if (moved <= 1e-12 * std::max(sweep_scale, 1.0)) break;
    }
  }

  PolylinePath out;
  for (const Vector& node : v) out.append(unflatten(node, rows, cols));
  return out;
}

GridPathResult grid_intrinsic_distance(const Vector& p, const Vector& q,
                                       const RegionOracle& oracle,
                                       double resolution) {
  if (oracle.dimension != 2 || !oracle.margin) {
    throw std::invalid_argument("grid_intrinsic_distance: need a planar oracle");
  }
  if (p.size() != 2 || q.size() != 2) {
    throw std::invalid_argument("grid_intrinsic_distance: points must be planar");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw std::invalid_argument("grid_intrinsic_distance: bad resolution");
  }
  if (!(oracle.margin(p) > 0.0) || !(oracle.margin(q) > 0.0)) {
    throw std::invalid_argument(
        "grid_intrinsic_distance: endpoints must be inside the region");
  }

  Vector lo(2), hi(2);
  for (int c = 0; c < 2; ++c) {
    lo(c) = std::min(p(c), q(c));
    hi(c) = std::max(p(c), q(c));
  }
  if (oracle.has_box) {
    for (int c = 0; c < 2; ++c) {
      lo(c) = std::min(lo(c), oracle.box_lo(c)) - 5.0 * resolution;
      hi(c) = std::max(hi(c), oracle.box_hi(c)) + 5.0 * resolution;
    }
  } else {
    const double span = std::max(hi(0) - lo(0), hi(1) - lo(1));
    const double pad = std::max(0.25 * span, 20.0 * resolution);
    for (int c = 0; c < 2; ++c) {
      lo(c) -= pad;
      hi(c) += pad;
    }
  }

  const long long nx =
      static_cast<long long>(std::ceil((hi(0) - lo(0)) / resolution)) + 1;
  const long long ny =
      static_cast<long long>(std::ceil((hi(1) - lo(1)) / resolution)) + 1;
  if (nx < 2 || ny < 2 || nx * ny > 20000000LL) {
    throw std::invalid_argument(
        "grid_intrinsic_distance: grid too large for this resolution");
  }

  GridPathResult result;
  result.cells_x = static_cast<int>(nx);
  result.cells_y = static_cast<int>(ny);

  const auto index = [nx](long long ix, long long iy) { return iy * nx + ix; };
  std::vector<char> inside(static_cast<size_t>(nx * ny));
  Vector w(2);
  for (long long iy = 0; iy < ny; ++iy) {
    for (long long ix = 0; ix < nx; ++ix) {
      w(0) = lo(0) + ix * resolution;
      w(1) = lo(1) + iy * resolution;
      inside[index(ix, iy)] = oracle.margin(w) > 0.0 ? 1 : 0;
    }
  }

  const auto snap = [&](const Vector& x, const char* who) {
    const long long ix = std::llround((x(0) - lo(0)) / resolution);
    const long long iy = std::llround((x(1) - lo(1)) / resolution);
    if (ix < 0 || ix >= nx || iy < 0 || iy >= ny || !inside[index(ix, iy)]) {
      throw std::invalid_argument(std::string(who) +
                                  ": endpoint does not snap into the region");
    }
    return std::make_pair(ix, iy);
  };
  const auto [px, py] = snap(p, "grid_intrinsic_distance");
  const auto [qx, qy] = snap(q, "grid_intrinsic_distance");

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<size_t>(nx * ny), inf);
  using Entry = std::pair<double, long long>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  dist[index(px, py)] = 0.0;
  queue.push({0.0, index(px, py)});

  const long long goal = index(qx, qy);
  const double diag = resolution * std::sqrt(2.0);
  while (!queue.empty()) {
    const auto [d, at] = queue.top();
    queue.pop();
    if (d > dist[at]) continue;
    if (at == goal) break;
    const long long ix = at % nx;
    const long long iy = at / nx;
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0) continue;
        const long long jx = ix + dx;
        const long long jy = iy + dy;
        if (jx < 0 || jx >= nx || jy < 0 || jy >= ny) continue;
        const long long to = index(jx, jy);
        if (!inside[to]) continue;
        const double step = (dx != 0 && dy != 0) ? diag : resolution;
        if (dist[at] + step < dist[to]) {
          dist[to] = dist[at] + step;
          queue.push({dist[to], to});
        }
      }
    }
  }

  if (dist[goal] == inf) {
    result.reachable = false;
    return result;
  }
  Vector snapped_p(2), snapped_q(2);
  snapped_p << lo(0) + px * resolution, lo(1) + py * resolution;
  snapped_q << lo(0) + qx * resolution, lo(1) + qy * resolution;
  result.reachable = true;
  result.length = dist[goal] + (p - snapped_p).norm() + (q - snapped_q).norm();
  return result;
}

CuspProbe cusp_probe(double h, double resolution) {
  if (!(h > 0.0 && h <= 1.0)) {
    throw std::invalid_argument("cusp_probe: h must lie in (0, 1]");
  }
  if (!(resolution > 0.0) || resolution > h / 20.0) {
    throw std::invalid_argument("cusp_probe: resolution too coarse for h");
  }

  const double wall = std::pow(h, 1.5);
  const double xoff = wall + 10.0 * resolution;
  Vector p(2), q(2);
  p << -xoff, h;
  q << xoff, h;

  RegionOracle oracle = cusp_oracle();
  oracle.has_box = true;
  oracle.box_lo = Vector(2);
  oracle.box_hi = Vector(2);
  oracle.box_lo << -(1.6 * xoff + 30.0 * resolution),
      -std::max(30.0 * resolution, 0.08 * h);
  oracle.box_hi << 1.6 * xoff + 30.0 * resolution, h + 30.0 * resolution;

  const GridPathResult grid = grid_intrinsic_distance(p, q, oracle, resolution);
  if (!grid.reachable) {
    throw std::runtime_error("cusp_probe: endpoints are not grid-connected");
  }

  CuspProbe out;
  out.h = h;
  out.d_ext = (p - q).norm();
  out.d_int = grid.length;
  out.ratio = out.d_int / out.d_ext;
  return out;
}

double cusp_ratio(double h, double resolution) {
  return cusp_probe(h, resolution).ratio;
}

}  // namespace glpath
