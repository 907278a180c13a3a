#include "glpath/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "glpath/cone2.hpp"
#include "glpath/matrix.hpp"
#include "glpath/strata.hpp"
#include "glpath/svd.hpp"

#include <Eigen/Eigenvalues>

namespace glpath {

namespace {

constexpr double kPi = 3.14159265358979323846;

double chord_scale(const Matrix& a, const Matrix& b) {
  return std::max(a.norm(), b.norm());
}

}  // namespace

SegmentDecomposition split_segment(const Matrix& a, const Matrix& b) {
  check_same_size(a, b, "split_segment");
  const int n = static_cast<int>(a.rows());

  SegmentDecomposition dec;
  dec.poly = det_along_segment(a, b);

  double max_coeff = 0.0;
  for (double c : dec.poly.coeffs) max_coeff = std::max(max_coeff, std::fabs(c));
  const double det_scale = std::pow(std::max({a.norm(), b.norm(), 1.0}), n);
  if (max_coeff <= 1e-12 * det_scale) {
    // The whole chord lies inside the variety.
    dec.interval_signs.assign(1, 0);
    return dec;
  }

  dec.crossings = real_roots_in_unit_interval(dec.poly);
  const double sign_tol =
      1e-12 * max_coeff * (dec.poly.degree() + 1);

  std::vector<double> bound;
  bound.push_back(0.0);
  bound.insert(bound.end(), dec.crossings.begin(), dec.crossings.end());
  bound.push_back(1.0);
  for (size_t i = 0; i + 1 < bound.size(); ++i) {
    const double v = dec.poly(0.5 * (bound[i] + bound[i + 1]));
    if (std::fabs(v) <= sign_tol) {
      dec.interval_signs.push_back(0);
    } else {
      dec.interval_signs.push_back(v > 0.0 ? 1 : -1);
    }
  }

  // A zero-sign sliver between two crossings is a multiple root split apart
  // by roundoff; collapse it into one tangential crossing.
  for (size_t k = 1; k + 1 < dec.interval_signs.size();) {
    if (dec.interval_signs[k] != 0) {
      ++k;
      continue;
    }
    const double merged = 0.5 * (dec.crossings[k - 1] + dec.crossings[k]);
    dec.crossings.erase(dec.crossings.begin() + k);
    dec.crossings[k - 1] = merged;
    dec.interval_signs.erase(dec.interval_signs.begin() + k);
  }
  return dec;
}

namespace {

struct ArcSample {
  double t;
  Matrix m;
};

// Re-project a stretch whose rank-(n-1) image jumped, one stratum further
// down. At rank 0 the stretch passes through the apex; the two segments that
// meet there are scalings of their endpoints and stay inside the variety.
void reroute_deeper(const Matrix& p, const Matrix& q, double t0, double t1,
                    int rank, double gap_limit, PolylinePath& path,
                    ArcStats& stats) {
  ++stats.rerouted;
  const int n = static_cast<int>(p.rows());
  if (rank <= 0) {
    path.append(Matrix::Zero(n, n));
    return;
  }
  const int steps = 8;
  std::vector<Matrix> sub;
  sub.reserve(steps + 1);
  for (int j = 0; j <= steps; ++j) {
    const double t = t0 + (t1 - t0) * j / steps;
    sub.push_back(project_to_rank((1.0 - t) * p + t * q, rank));
  }
  bool smooth = true;
  for (int j = 0; j + 1 <= steps; ++j) {
    if ((sub[j + 1] - sub[j]).norm() > gap_limit) {
      smooth = false;
      break;
    }
  }
  if (!smooth) {
    reroute_deeper(p, q, t0, t1, rank - 1, gap_limit, path, stats);
    return;
  }
  for (const Matrix& m : sub) path.append(m);
}

}  // namespace

PolylinePath variety_arc(const Matrix& p, const Matrix& q, double resolution,
                         ArcStats* stats) {
  check_same_size(p, q, "variety_arc");
  if (!(resolution > 0.0 && resolution <= 0.5)) {
    throw std::invalid_argument("variety_arc: resolution must lie in (0, 0.5]");
  }
  for (const Matrix* end : {&p, &q}) {
    if (distance_to_variety(*end) > 1e-8 * (1.0 + end->norm())) {
      throw std::invalid_argument("variety_arc: endpoints must be singular");
    }
  }
  ArcStats local;
  ArcStats& st = stats ? *stats : local;
  const int n = static_cast<int>(p.rows());

  PolylinePath path;
  const double len = (p - q).norm();
  if (len == 0.0) {
    path.append(p);
    return path;
  }

  const double gap_limit = 10.0 * resolution * len;
  const auto at = [&](double t) -> Matrix {
    if (t == 0.0) return p;
    if (t == 1.0) return q;
    return project_to_rank((1.0 - t) * p + t * q, n - 1);
  };

  std::vector<ArcSample> samples;
  const int steps = static_cast<int>(std::ceil(1.0 / resolution));
  samples.reserve(steps + 1);
  for (int j = 0; j <= steps; ++j) {
    const double t = static_cast<double>(j) / steps;
    samples.push_back({t, at(t)});
  }

  // Bisect wide gaps a few times; what stays wide is a genuine jump of the
  // projection and gets rerouted through a deeper stratum below.
  for (int round = 0; round < 4; ++round) {
    std::vector<ArcSample> next;
    next.reserve(samples.size() * 2);
    bool inserted = false;
    for (size_t k = 0; k < samples.size(); ++k) {
      if (k > 0 && (samples[k].m - samples[k - 1].m).norm() > gap_limit) {
        const double tm = 0.5 * (samples[k - 1].t + samples[k].t);
        next.push_back({tm, at(tm)});
        inserted = true;
        ++st.refined;
      }
      next.push_back(samples[k]);
    }
    samples.swap(next);
    if (!inserted) break;
  }

  path.append(samples.front().m);
  for (size_t k = 1; k < samples.size(); ++k) {
    if ((samples[k].m - samples[k - 1].m).norm() > gap_limit) {
      reroute_deeper(p, q, samples[k - 1].t, samples[k].t, n - 2, gap_limit,
                     path, st);
    }
    path.append(samples[k].m);
  }
  return path;
}

namespace {

double node_scale(const Matrix& node, double path_scale) {
  const double s = node.norm();
  if (s > 0.0) return s;
  return path_scale > 0.0 ? path_scale : 1.0;
}

int rank_of_sigma(const Vector& sigma) {
  const double cut = kRankTol * std::max(sigma(0), 1.0);
  int r = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut) ++r;
  }
  return r;
}

}  // namespace

PolylinePath ascend_stratum(const PolylinePath& path, int k, double eps) {
  if (path.empty()) {
    throw std::invalid_argument("ascend_stratum: empty path");
  }
  if (!(eps > 0.0 && eps <= 0.1)) {
    throw std::invalid_argument("ascend_stratum: eps must lie in (0, 0.1]");
  }
  const int n = path.dim();
  if (k < 0 || k + 1 > n - 1) {
    throw std::invalid_argument(
        "ascend_stratum: target rank must stay below full rank");
  }

  const std::vector<Matrix>& nodes = path.nodes();
  double path_scale = 0.0;
  for (const Matrix& node : nodes) path_scale = std::max(path_scale, node.norm());

  std::vector<SvdFactorization> fac;
  fac.reserve(nodes.size());
  for (const Matrix& node : nodes) {
    fac.push_back(svd(node));
    if (rank_of_sigma(fac.back().sigma) > k) {
      throw std::invalid_argument("ascend_stratum: node rank exceeds k");
    }
  }

  PolylinePath out;
  Matrix prev_dir;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const SvdFactorization& f = fac[i];
    const int r = rank_of_sigma(f.sigma);
    const double s = node_scale(nodes[i], path_scale);

    Matrix dir;
    if (r == k) {
      const Matrix own = f.u.col(r) * f.v.col(r).transpose();
      if (prev_dir.size() == 0) {
        dir = own;
      } else {
        // Transport the previous bump direction into this node's null block
        // so consecutive nodes are raised coherently.
        const Matrix uperp = f.u.rightCols(n - r);
        const Matrix vperp = f.v.rightCols(n - r);
        const Matrix proj =
            uperp * (uperp.transpose() * prev_dir * vperp) * vperp.transpose();
        dir = proj.norm() < 0.1 ? own : Matrix(proj / proj.norm());
      }
    } else {
      // Deeply degenerate node: raise every missing singular direction at
      // once so the result lands on the target stratum, not below it.
      dir = Matrix::Zero(n, n);
      for (int j = r; j <= k; ++j) {
        dir += f.u.col(j) * f.v.col(j).transpose();
      }
    }
    if (prev_dir.size() != 0 && dir.cwiseProduct(prev_dir).sum() < 0.0) {
      dir = -dir;
    }
    prev_dir = dir;

    const Matrix raised = nodes[i] + (eps * s) * dir;
    const SvdFactorization check = svd(raised);
    if (!(check.sigma(k) > 0.5 * eps * s) ||
        check.sigma(k + 1) > 1e-8 * std::max(check.sigma(0), 1e-300)) {
      throw std::runtime_error(
          "ascend_stratum: raised node misses the target stratum");
    }
    out.append(raised);
  }

  const double terminal = nodes.front().norm() + nodes.back().norm();
  if (out.length() > path.length() + 2.0 * eps * (path.length() + terminal)) {
    throw std::runtime_error("ascend_stratum: length control violated");
  }
  return out;
}

PolylinePath pushout_to_glplus(const PolylinePath& path, double eps) {
  if (path.empty()) {
    throw std::invalid_argument("pushout_to_glplus: empty path");
  }
  if (!(eps > 0.0 && eps <= 0.1)) {
    throw std::invalid_argument("pushout_to_glplus: eps must lie in (0, 0.1]");
  }
  const int n = path.dim();
  const std::vector<Matrix>& nodes = path.nodes();
  double path_scale = 0.0;
  for (const Matrix& node : nodes) path_scale = std::max(path_scale, node.norm());

  std::vector<Matrix> normals;
  normals.reserve(nodes.size());
  for (const Matrix& node : nodes) {
    const Matrix c = cofactor_matrix(node);
    const double nc = c.norm();
    const double floor =
        1e-12 * std::pow(std::max(node.norm(), 1e-300), n - 1);
    if (nc <= floor) {
      throw std::invalid_argument(
          "pushout_to_glplus: node cofactor vanishes (rank below n-1)");
    }
    normals.push_back(c / nc);
  }

  const double terminal = nodes.front().norm() + nodes.back().norm();
  double cur = eps;
  for (int attempt = 0; attempt <= 20; ++attempt, cur *= 0.5) {
    PolylinePath out;
    for (size_t i = 0; i < nodes.size(); ++i) {
      const double s = node_scale(nodes[i], path_scale);
      out.append(nodes[i] + (cur * s) * normals[i]);
    }
    bool positive = true;
    const std::vector<Matrix>& moved = out.nodes();
    for (size_t i = 0; i < moved.size() && positive; ++i) {
      if (det(moved[i]) <= 0.0) positive = false;
      if (positive && i + 1 < moved.size() &&
          det(0.5 * (moved[i] + moved[i + 1])) <= 0.0) {
        positive = false;
      }
    }
    if (!positive) continue;
    if (out.length() > path.length() + 4.0 * cur * (path.length() + terminal)) {
      continue;
    }
    return out;
  }
  throw std::runtime_error(
      "pushout_to_glplus: determinant not positive after 20 halvings");
}

namespace {

struct PlaneRotation {
  int i;
  int j;
  double theta;
};

// Factor a special-orthogonal matrix into commuting plane rotations in a real
// Schur basis. Unpaired -1 diagonal entries come in pairs (the determinant is
// +1) and are joined into half-turn planes.
std::vector<PlaneRotation> rotation_planes(const Matrix& rel, Matrix* basis) {
  const int n = static_cast<int>(rel.rows());
  Eigen::RealSchur<Matrix> schur(rel);
  if (schur.info() != Eigen::Success) {
    throw std::runtime_error("sphere_connect: rotation factorization failed");
  }
  *basis = schur.matrixU();
  const Matrix t = schur.matrixT();

  std::vector<PlaneRotation> planes;
  std::vector<int> negatives;
  int d = 0;
  while (d < n) {
    if (d + 1 < n && std::fabs(t(d + 1, d)) > 1e-8) {
      planes.push_back({d, d + 1, std::atan2(t(d + 1, d), t(d, d))});
      d += 2;
    } else {
      if (t(d, d) < 0.0) negatives.push_back(d);
      ++d;
    }
  }
  if (negatives.size() % 2 != 0) {
    throw std::runtime_error("sphere_connect: rotation factorization failed");
  }
  for (size_t a = 0; a + 1 < negatives.size(); a += 2) {
    planes.push_back({negatives[a], negatives[a + 1], kPi});
  }
  return planes;
}

Matrix rotation_at(const std::vector<PlaneRotation>& planes,
                   const Matrix& basis, double t) {
  const int n = static_cast<int>(basis.rows());
  Matrix g = Matrix::Identity(n, n);
  for (const PlaneRotation& pl : planes) {
    const double c = std::cos(t * pl.theta);
    const double s = std::sin(t * pl.theta);
    Matrix r = Matrix::Identity(n, n);
    r(pl.i, pl.i) = c;
    r(pl.j, pl.j) = c;
    r(pl.i, pl.j) = -s;
    r(pl.j, pl.i) = s;
    g = g * r;
  }
  return basis * g * basis.transpose();
}

// Polyline approximation of a curve of positive-determinant matrices over
// [0, 1]. Splits until nodes are close, the chord tracks the curve, and every
// chord midpoint keeps a positive determinant; fn(0) is appended first.
void append_curve(PolylinePath& path, const std::function<Matrix(double)>& fn,
                  double max_gap) {
  std::function<void(double, double, const Matrix&, const Matrix&, int)> emit =
      [&](double t0, double t1, const Matrix& f0, const Matrix& f1, int depth) {
        if (depth < 12) {
          const Matrix mid = fn(0.5 * (t0 + t1));
          const bool wide = (f1 - f0).norm() > max_gap;
          const bool sag = det(0.5 * (f0 + f1)) <= 0.0;
          const bool bent = (mid - 0.5 * (f0 + f1)).norm() > 0.2 * max_gap;
          if (wide || sag || bent) {
            emit(t0, 0.5 * (t0 + t1), f0, mid, depth + 1);
            emit(0.5 * (t0 + t1), t1, mid, f1, depth + 1);
            return;
          }
        }
        path.append(f1);
      };
  Matrix prev = fn(0.0);
  path.append(prev);
  const int coarse = 8;
  for (int j = 1; j <= coarse; ++j) {
    const Matrix next = fn(static_cast<double>(j) / coarse);
    emit((j - 1.0) / coarse, static_cast<double>(j) / coarse, prev, next, 0);
    prev = next;
  }
}

}  // namespace

PolylinePath sphere_connect(const Matrix& p, const Matrix& q, double radius) {
  check_same_size(p, q, "sphere_connect");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("sphere_connect: radius must be positive");
  }
  if (det(p) <= 0.0 || det(q) <= 0.0) {
    throw std::invalid_argument(
        "sphere_connect: endpoints must have positive determinant");
  }

  PolylinePath path;
  path.append(p);
  if ((p - q).norm() == 0.0) return path;

  const int n = static_cast<int>(p.rows());
  if (n == 1) {
    // Positive reals are convex; the straight segment never leaves them.
    path.append(q);
    return path;
  }

  const double root_n = std::sqrt(static_cast<double>(n));
  const double max_gap = 0.05 * radius;
  const SvdFactorization fp = svd(p);
  const SvdFactorization fq = svd(q);
  const Matrix rot_p = fp.u * fp.v.transpose();
  const Matrix rot_q = fq.u * fq.v.transpose();

  // Flatten the singular values toward 1 while staying on the sphere; at
  // s = 1 the point is the scaled orthogonal factor.
  const auto squash = [&](const SvdFactorization& f, const Matrix& rot,
                          double s) -> Matrix {
    Vector sig(n);
    for (int i = 0; i < n; ++i) sig(i) = std::pow(f.sigma(i), 1.0 - s);
    const Matrix m = rot * (f.v * sig.asDiagonal() * f.v.transpose());
    return (radius / m.norm()) * m;
  };

  // The hop from an endpoint onto the sphere is radial, so its chord is a
  // piece of a ray and keeps the determinant sign everywhere.
  append_curve(path, [&](double s) { return squash(fp, rot_p, s); }, max_gap);

  Matrix basis;
  const std::vector<PlaneRotation> planes =
      rotation_planes(rot_p.transpose() * rot_q, &basis);
  append_curve(
      path,
      [&](double s) {
        return Matrix((radius / root_n) * (rot_p * rotation_at(planes, basis, s)));
      },
      max_gap);
  path.append((radius / root_n) * rot_q);

  append_curve(path, [&](double s) { return squash(fq, rot_q, 1.0 - s); },
               max_gap);
  path.append(q);
  return path;
}

namespace {

// Raise every below-top-rank stretch of an on-variety polyline until all
// nodes sit on the rank n-1 stratum. Junctions around a raised window are
// eased with re-projected interior points. Membership uses a clearance
// cut of order eps, not the generic rank tolerance: the cofactor push
// gains determinant in proportion to sigma_{n-2}, so a node merely near a
// deeper stratum starves it just as surely as a node exactly on one. The
// cut sits below the 0.5*eps floor the ascent guarantees, so raised nodes
// never re-enter a window.
PolylinePath raise_to_top_stratum(PolylinePath arc, double eps) {
  const int n = arc.dim();
  const auto bridge = [&](PolylinePath& acc, const Matrix& x, const Matrix& y) {
    for (int j = 1; j <= 4; ++j) {
      const double t = j / 5.0;
      acc.append(project_to_rank((1.0 - t) * x + t * y, n - 1));
    }
  };

  for (int guard = 0; guard < 2 * n + 4; ++guard) {
    const std::vector<Matrix>& nodes = arc.nodes();
    double path_scale = 0.0;
    for (const Matrix& node : nodes) {
      path_scale = std::max(path_scale, node.norm());
    }
    std::vector<int> rank(nodes.size());
    int kmin = n;
    for (size_t i = 0; i < nodes.size(); ++i) {
      const SvdFactorization f = svd(nodes[i]);
      const double cut = 0.45 * eps * node_scale(nodes[i], path_scale);
      int r = 0;
      for (int j = 0; j < n; ++j) {
        if (f.sigma(j) > cut) ++r;
      }
      rank[i] = r;
      kmin = std::min(kmin, rank[i]);
    }
    if (kmin >= n - 1) return arc;

    size_t ia = 0;
    while (rank[ia] != kmin) ++ia;
    size_t ib = nodes.size() - 1;
    while (rank[ib] != kmin) --ib;

    PolylinePath window;
    for (size_t i = ia; i <= ib; ++i) {
      window.append(project_to_rank(nodes[i], kmin));
    }
    const PolylinePath raised = ascend_stratum(window, kmin, eps);

    PolylinePath rebuilt;
    for (size_t i = 0; i < ia; ++i) rebuilt.append(nodes[i]);
    if (ia > 0) bridge(rebuilt, nodes[ia - 1], raised.nodes().front());
    rebuilt.extend(raised);
    if (ib + 1 < nodes.size()) {
      bridge(rebuilt, raised.nodes().back(), nodes[ib + 1]);
      for (size_t i = ib + 1; i < nodes.size(); ++i) rebuilt.append(nodes[i]);
    }
    arc = std::move(rebuilt);
  }
  throw std::runtime_error("build_path: stratum ascent did not terminate");
}

// Split arc edges until the gap between neighbors is small against the local
// clearance scale. The cofactor push later buys determinant of order
// eps * scale * sigma_{n-1} per node, while a chord midpoint can sag below
// the variety by a quarter of the squared gap; this keeps the push ahead.
PolylinePath densify_for_push(const PolylinePath& arc, double eps) {
  const int n = arc.dim();
  std::vector<Matrix> nodes(arc.nodes().begin(), arc.nodes().end());
  std::vector<double> clearance(nodes.size());
  const auto local_clearance = [&](const Matrix& m) {
    const SvdFactorization f = svd(m);
    return std::max(m.norm(), 1e-300) * f.sigma(n - 2);
  };
  for (size_t i = 0; i < nodes.size(); ++i) {
    clearance[i] = local_clearance(nodes[i]);
  }

  for (int round = 0; round < 16; ++round) {
    std::vector<Matrix> out;
    std::vector<double> out_clearance;
    out.reserve(nodes.size() * 2);
    out_clearance.reserve(nodes.size() * 2);
    bool split_any = false;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (i > 0) {
        const double gap = (nodes[i] - nodes[i - 1]).norm();
        const double limit =
            std::sqrt(eps * std::min(clearance[i - 1], clearance[i]));
        if (gap > limit) {
          const Matrix mid =
              project_to_rank(0.5 * (nodes[i - 1] + nodes[i]), n - 1);
          out.push_back(mid);
          out_clearance.push_back(local_clearance(mid));
          split_any = true;
        }
      }
      out.push_back(nodes[i]);
      out_clearance.push_back(clearance[i]);
    }
    nodes.swap(out);
    clearance.swap(out_clearance);
    if (!split_any) break;
  }

  PolylinePath dense;
  for (const Matrix& m : nodes) dense.append(m);
  return dense;
}

// Certificate-grade positivity: every node and ten interior samples of every
// segment, the same sweep the final certificate runs.
bool sweep_positive(const PolylinePath& path) {
  const std::vector<Matrix>& nd = path.nodes();
  for (size_t i = 0; i < nd.size(); ++i) {
    if (det(nd[i]) <= 0.0) return false;
    if (i + 1 == nd.size()) continue;
    for (int k = 1; k <= kOversample; ++k) {
      const double t = static_cast<double>(k) / (kOversample + 1);
      if (det(Matrix((1.0 - t) * nd[i] + t * nd[i + 1])) <= 0.0) return false;
    }
  }
  return true;
}

// Lift one singular matrix into the positive-determinant set: ascend through
// the strata to rank n-1 if needed, then push along the cofactor normal.
Matrix lift_to_glplus(const Matrix& m, double eps) {
  const int n = static_cast<int>(m.rows());
  PolylinePath t;
  t.append(m);
  int r = classify_rank(m).rank;
  while (r < n - 1) {
    t = ascend_stratum(t, r, eps);
    ++r;
  }
  t = pushout_to_glplus(t, eps);
  return t.nodes().back();
}

// One assembly pass at a fixed eps; throws when a step cannot certify itself
// and the caller halves eps.
PolylinePath assemble_path(const Matrix& a, const Matrix& b,
                           const SegmentDecomposition& dec, double eps) {
  const int n = static_cast<int>(a.rows());
  const int m = static_cast<int>(dec.crossings.size());
  const double maxab = chord_scale(a, b);
  const double res = std::min(0.02, 0.5 * std::sqrt(eps));
  const auto chord = [&](double t) -> Matrix { return (1.0 - t) * a + t * b; };

  std::vector<double> bound(m + 2);
  bound[0] = 0.0;
  for (int i = 0; i < m; ++i) bound[i + 1] = dec.crossings[i];
  bound[m + 1] = 1.0;

  std::vector<double> trim(m);
  for (int i = 0; i < m; ++i) {
    const double left = bound[i + 1] - bound[i];
    const double right = bound[i + 2] - bound[i + 1];
    trim[i] = std::min(eps, 0.25 * std::min(left, right));
  }

  if (dec.interval_signs.front() <= 0 || dec.interval_signs.back() <= 0) {
    throw std::runtime_error(
        "build_path: chord decomposition inconsistent with endpoints");
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
        const Matrix x = chord(bound[i + 1]);
        if (x.norm() < eps * maxab) {
          path.extend(sphere_connect(chord(tr), chord(bound[i + 1] + trim[i]),
                                     eps * maxab));
        } else {
          path.append(lift_to_glplus(project_to_rank(x, n - 1), eps));
        }
      }
      ++i;
      continue;
    }

    int j = i;
    while (j <= m && dec.interval_signs[j] <= 0) ++j;
    const Matrix pm = project_to_rank(chord(bound[i]), n - 1);
    const Matrix qm = project_to_rank(chord(bound[j]), n - 1);
    // The 2x2 cone has exact polar geometry; larger sizes follow the
    // projected chord, refined where the projection jumps.
    PolylinePath arc =
        n == 2 ? cone_path(pm, qm) : variety_arc(pm, qm, res, nullptr);

    double min_node_norm = arc.nodes().front().norm();
    for (const Matrix& node : arc.nodes()) {
      min_node_norm = std::min(min_node_norm, node.norm());
    }
    if (min_node_norm < eps * std::max({pm.norm(), qm.norm(), 1e-300})) {
      // The on-variety route passes the apex; detour around the small sphere
      // between the backed-off chord points instead.
      path.extend(sphere_connect(chord(bound[i] - trim[i - 1]),
                                 chord(bound[j] + trim[j - 1]), eps * maxab));
    } else {
      bool pushed = false;
      try {
        PolylinePath lifted = raise_to_top_stratum(std::move(arc), eps);
        lifted = densify_for_push(lifted, eps);
        lifted = pushout_to_glplus(lifted, eps);
        if (sweep_positive(lifted)) {
          path.extend(lifted);
          pushed = true;
        }
      } catch (const std::runtime_error&) {
      }
      if (!pushed) {
        // The null structure can flip inside the travel stretch, and then no
        // pointwise raise keeps the flanking segments clear of the variety.
        // The rotation detour at matrix scale always does.
        const Matrix exit = chord(bound[j] + trim[j - 1]);
        path.extend(sphere_connect(path.back(), exit,
                                   std::min(path.back().norm(), exit.norm())));
      }
    }
    i = j;
  }
  path.append(b);
  return path;
}

}  // namespace

PathCertificate build_path(const Matrix& a, const Matrix& b, double eps) {
  check_same_size(a, b, "build_path");
  if (!(eps > 0.0 && eps <= 0.1)) {
    throw std::invalid_argument("build_path: eps must lie in (0, 0.1]");
  }
  if (det(a) <= 0.0 || det(b) <= 0.0) {
    throw std::invalid_argument(
        "build_path: endpoints must have positive determinant");
  }

  if ((a - b).norm() == 0.0) {
    PolylinePath single;
    single.append(a);
    return make_certificate(a, b, std::move(single), eps);
  }

  const SegmentDecomposition dec = split_segment(a, b);
  if (dec.crossings.empty() && dec.interval_signs.front() > 0) {
    PolylinePath direct;
    direct.append(a);
    direct.append(b);
    return make_certificate(a, b, std::move(direct), eps);
  }

  bool have_best = false;
  PathCertificate best;
  double cur = eps;
  for (int attempt = 0; attempt <= 20; ++attempt, cur *= 0.5) {
    try {
      PathCertificate cert =
          make_certificate(a, b, assemble_path(a, b, dec, cur), cur);
      if (cert.feasible) return cert;
      if (!have_best || cert.min_det > best.min_det) {
        best = std::move(cert);
        have_best = true;
      }
    } catch (const std::runtime_error& e) {
      if (std::getenv("GLPATH_TRACE")) {
        std::fprintf(stderr, "attempt %d eps %.3g: %s\n", attempt, cur, e.what());
      }
    }
  }
  if (have_best) return best;

  // Every assembly attempt failed outright; report the bare chord honestly.
  PolylinePath direct;
  direct.append(a);
  direct.append(b);
  return make_certificate(a, b, std::move(direct), eps);
}

}  // namespace glpath
