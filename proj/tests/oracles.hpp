#pragma once
// Slow reference implementations the fast library code is checked against,
// plus shared helpers for building random test instances.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "glpath/bench.hpp"
#include "glpath/surgery.hpp"
#include "glpath/svd.hpp"
#include "glpath/types.hpp"

namespace glpath::testing {

// Determinant by recursive cofactor expansion along the first row. O(n!),
// usable up to n = 6 or so.
inline double det_cofactor_expansion(const Matrix& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 1) return a(0, 0);
  double acc = 0.0;
  double sign = 1.0;
  for (int j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    acc += sign * a(0, j) * det_cofactor_expansion(minor);
    sign = -sign;
  }
  return acc;
}

// Central finite differences of the determinant in every entry.
inline Matrix fd_det_gradient(const Matrix& a, double step) {
  Matrix g(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      Matrix hi = a, lo = a;
      hi(i, j) += step;
      lo(i, j) -= step;
      g(i, j) = (hi.determinant() - lo.determinant()) / (2.0 * step);
    }
  }
  return g;
}

// Determinant along the chord from a to b at m + 1 uniform parameters.
inline std::vector<double> dense_chord_dets(const Matrix& a, const Matrix& b,
                                            int m) {
  std::vector<double> out;
  out.reserve(m + 1);
  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    out.push_back(Matrix((1.0 - t) * a + t * b).determinant());
  }
  return out;
}

// Checks a segment decomposition against dense determinant samples. Samples
// whose magnitude is below a relative noise floor carry no information (they
// sit next to a crossing); every sample above the floor must agree with the
// sign of its interval, and samples inside a vanishing interval must all sit
// below the floor.
inline bool signs_match_dense(const SegmentDecomposition& d, const Matrix& a,
                              const Matrix& b, int m) {
  const std::vector<double> dets = dense_chord_dets(a, b, m);
  double maxabs = 0.0;
  for (double v : dets) maxabs = std::max(maxabs, std::abs(v));
  const double floor = 1e-7 * std::max(maxabs, 1e-300);

  std::vector<double> bounds;
  bounds.push_back(0.0);
  bounds.insert(bounds.end(), d.crossings.begin(), d.crossings.end());
  bounds.push_back(1.0);
  if (d.interval_signs.size() + 1 != bounds.size()) return false;

  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    size_t k = 0;
    while (k + 2 < bounds.size() && t > bounds[k + 1]) ++k;
    const int s = d.interval_signs[k];
    const double v = dets[i];
    if (s == 0) {
      if (std::abs(v) > floor) return false;
    } else if (std::abs(v) > floor && (v > 0.0 ? 1 : -1) != s) {
      // A sample near an interval edge may already belong to the other side
      // of the crossing; only fail when it is interior.
      const double lo = bounds[k], hi = bounds[k + 1];
      if (t - lo > 1e-6 && hi - t > 1e-6) return false;
    }
  }
  return true;
}

// Haar-ish rotation: orthogonal factor of a Gaussian sample, reflected into
// determinant +1.
inline Matrix rotation_sample(int n, Rng& rng) {
  Matrix q = svd(sample_glplus(n, rng)).u;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

// Random matrix of exact rank r (singular value truncation of a Gaussian).
inline Matrix random_rank(int n, int r, Rng& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
  SvdFactorization f = svd(m);
  for (int i = r; i < n; ++i) f.sigma(i) = 0.0;
  return f.u * f.sigma.asDiagonal() * f.v.transpose();
}

inline Matrix random_matrix(int n, Rng& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
  return m;
}

}  // namespace glpath::testing
