#include "glpath/cone2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "glpath/strata.hpp"
#include "glpath/surgery.hpp"

namespace glpath {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;
constexpr double kInvSqrt2 = 0.7071067811865475244;

double positive_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

// Shortest representative of an angle difference, in (-pi, pi].
double wrap_angle(double d) {
  d = std::remainder(d, kTwoPi);
  return d;
}

void check_on_cone(const Matrix& a, const char* who) {
  check_square(a, who);
  if (a.rows() != 2) {
    throw std::invalid_argument(std::string(who) + ": 2x2 matrices only");
  }
  const double d = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (std::fabs(d) > 1e-9 * a.squaredNorm()) {
    throw std::invalid_argument(std::string(who) +
                                ": endpoint off the singular cone");
  }
}

// Push a nonzero cone point off the singular set along the cofactor normal,
// by eps times its own norm. For a rank-one 2x2 matrix the resulting
// determinant is exactly eps * norm * |cofactor|.
Matrix push_off_cone(const Matrix& m, double eps) {
  const Matrix c = cofactor_matrix(m);
  const double nc = c.norm();
  if (nc <= 1e-14 * std::max(m.norm(), 1.0)) {
    throw std::runtime_error("surgery2: cannot push a point with vanishing cofactor");
  }
  return m + (eps * m.norm() / nc) * c;
}

}  // namespace

TorusPoint torus_point_from_matrix(const Matrix& a) {
  check_on_cone(a, "torus_point_from_matrix");
  const double r = a.norm();
  if (r <= 0.0) {
    throw std::invalid_argument(
        "torus_point_from_matrix: the apex has no angular coordinates");
  }
  const ConeCoords2 c = to_cone_coords(a);
  TorusPoint p;
  p.r = r;
  p.alpha = positive_angle(std::atan2(c.y, c.x));
  p.beta = positive_angle(std::atan2(c.w, c.z));
  return p;
}

Matrix matrix_from_torus_point(const TorusPoint& p) {
  if (!(p.r >= 0.0) || !std::isfinite(p.r) || !std::isfinite(p.alpha) ||
      !std::isfinite(p.beta)) {
    throw std::invalid_argument("matrix_from_torus_point: bad polar data");
  }
  ConeCoords2 c;
  const double rho = p.r * kInvSqrt2;
  c.x = rho * std::cos(p.alpha);
  c.y = rho * std::sin(p.alpha);
  c.z = rho * std::cos(p.beta);
  c.w = rho * std::sin(p.beta);
  return from_cone_coords(c);
}

PolylinePath torus_geodesic(const TorusPoint& p, const TorusPoint& q, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("torus_geodesic: level must be positive");
  }
  if (std::fabs(p.r - r) > 1e-9 * r || std::fabs(q.r - r) > 1e-9 * r) {
    throw std::invalid_argument("torus_geodesic: points are not at the given level");
  }
  const double da = wrap_angle(q.alpha - p.alpha);
  const double db = wrap_angle(q.beta - p.beta);
  const double ang = std::hypot(da, db);

  PolylinePath path;
  if (ang == 0.0) {
    path.append(matrix_from_torus_point({r, p.alpha, p.beta}));
    return path;
  }
  const double arc = r * kInvSqrt2 * ang;
  const int steps = std::max(1, static_cast<int>(std::ceil(arc / (1e-3 * r))));
  for (int j = 0; j <= steps; ++j) {
    const double s = static_cast<double>(j) / steps;
    path.append(matrix_from_torus_point({r, p.alpha + s * da, p.beta + s * db}));
  }
  return path;
}

PolylinePath cone_path(const Matrix& p, const Matrix& q) {
  check_on_cone(p, "cone_path");
  check_on_cone(q, "cone_path");
  const double rp = p.norm();
  const double rq = q.norm();

  PolylinePath path;
  if (std::min(rp, rq) <= 1e-12 * std::max({rp, rq, 1.0})) {
    // Apex endpoint: the straight segment is a subset of a ray, hence on the
    // cone throughout.
    path.append(p);
    path.append(q);
    return path;
  }

  const TorusPoint tp = torus_point_from_matrix(p);
  const TorusPoint tq = torus_point_from_matrix(q);
  const double level = std::min(rp, rq);
  path.append(p);
  if (rp > rq) {
    path.append(p * (rq / rp));  // radial slide down to the level of q
    path.extend(torus_geodesic({level, tp.alpha, tp.beta},
                               {level, tq.alpha, tq.beta}, level));
  } else {
    path.extend(torus_geodesic({level, tp.alpha, tp.beta},
                               {level, tq.alpha, tq.beta}, level));
    path.append(q);  // radial slide up from the level of p
  }
  return path;
}

namespace {

// One assembly pass of the 2x2 pipeline at a fixed eps. Throws when a
// construction step cannot certify itself; the caller halves eps and retries.
PolylinePath assemble2(const Matrix& a, const Matrix& b,
                       const SegmentDecomposition& dec, double eps) {
  const int m = static_cast<int>(dec.crossings.size());
  const double maxab = std::max(a.norm(), b.norm());
  const auto chord = [&](double t) -> Matrix { return (1.0 - t) * a + t * b; };

  std::vector<double> bound(m + 2);
  bound[0] = 0.0;
  for (int i = 0; i < m; ++i) bound[i + 1] = dec.crossings[i];
  bound[m + 1] = 1.0;

  // Back-off distance at each crossing, in chord parameter units: stay well
  // inside the adjacent intervals.
  std::vector<double> trim(m);
  for (int i = 0; i < m; ++i) {
    const double left = bound[i + 1] - bound[i];
    const double right = bound[i + 2] - bound[i + 1];
    trim[i] = std::min(eps, 0.25 * std::min(left, right));
  }

  if (dec.interval_signs.front() <= 0 || dec.interval_signs.back() <= 0) {
    throw std::runtime_error("surgery2: chord decomposition inconsistent with endpoints");
  }

  PolylinePath path;
  path.append(a);
  int i = 0;
  while (i <= m) {
    if (dec.interval_signs[i] > 0) {
      const double tl = bound[i] + (i > 0 ? trim[i - 1] : 0.0);
      const double tr = bound[i + 1] - (i < m ? trim[i] : 0.0);
      path.append(chord(tl));
      path.append(chord(tr));
      if (i < m && dec.interval_signs[i + 1] > 0) {
        // Tangential touch of the cone between two positive stretches.
        const Matrix x = chord(bound[i + 1]);
        const Matrix entry = chord(bound[i + 1] + trim[i]);
        if (x.norm() < eps * maxab) {
          path.extend(sphere_connect(chord(tr), entry, eps * maxab));
        } else {
          path.append(push_off_cone(project_to_rank(x, 1), eps));
        }
      }
      ++i;
      continue;
    }

    // Maximal run of nonpositive intervals: crossings bound[i] .. bound[j].
    int j = i;
    while (j <= m && dec.interval_signs[j] <= 0) ++j;
    const Matrix p = project_to_rank(chord(bound[i]), 1);
    const Matrix q = project_to_rank(chord(bound[j]), 1);
    const PolylinePath arc = cone_path(p, q);

    double min_node_norm = arc.nodes().front().norm();
    for (const Matrix& node : arc.nodes()) {
      min_node_norm = std::min(min_node_norm, node.norm());
    }
    if (min_node_norm < eps * std::max(p.norm(), q.norm())) {
      // The cone path passes through the apex: go around the small sphere
      // instead, between the backed-off chord points.
      const Matrix from = chord(bound[i] - trim[i - 1]);
      const Matrix to = chord(bound[j] + trim[j - 1]);
      path.extend(sphere_connect(from, to, eps * maxab));
    } else {
      for (const Matrix& node : arc.nodes()) {
        path.append(push_off_cone(node, eps));
      }
    }
    i = j;
  }
  path.append(b);
  return path;
}

}  // namespace

PathCertificate surgery2(const Matrix& a, const Matrix& b, double eps) {
  check_same_size(a, b, "surgery2");
  if (a.rows() != 2) {
    throw std::invalid_argument("surgery2: 2x2 matrices only");
  }
  if (!(eps > 0.0 && eps <= 0.1)) {
    throw std::invalid_argument("surgery2: eps must lie in (0, 0.1]");
  }
  const double da = det(a);
  const double db = det(b);
  if (da <= 0.0 || db <= 0.0) {
    throw std::invalid_argument("surgery2: endpoints must have positive determinant");
  }

  if ((a - b).norm() == 0.0) {
    PolylinePath single;
    single.append(a);
    return make_certificate(a, b, std::move(single), eps);
  }

  const SegmentDecomposition dec = split_segment(a, b);
  if (dec.crossings.empty()) {
    PolylinePath direct;
    direct.append(a);
    direct.append(b);
    return make_certificate(a, b, std::move(direct), eps);
  }

  double cur = eps;
  for (int attempt = 0; attempt <= 20; ++attempt, cur *= 0.5) {
    try {
      PathCertificate cert =
          make_certificate(a, b, assemble2(a, b, dec, cur), cur);
      if (cert.feasible) return cert;
    } catch (const std::runtime_error&) {
      // retry with a smaller push
    }
  }
  throw std::runtime_error(
      "surgery2: could not keep the determinant positive after 20 eps halvings");
}

}  // namespace glpath
