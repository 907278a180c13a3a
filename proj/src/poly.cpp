#include "glpath/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "glpath/matrix.hpp"

namespace glpath {

double DetPolynomial::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double DetPolynomial::derivative_at(double t) const {
  double acc = 0.0;
  for (int k = degree(); k >= 1; --k) acc = acc * t + k * coeffs[k];
  return acc;
}

DetPolynomial det_along_segment(const Matrix& a, const Matrix& b) {
  check_same_size(a, b, "det_along_segment");
  const int n = static_cast<int>(a.rows());
  const int m = n + 1;

  // Interpolate in the shifted variable s = 2t - 1, where the Chebyshev nodes
  // keep the Vandermonde system well conditioned, then expand back.
  Vector s_nodes(m), y(m);
  for (int k = 0; k < m; ++k) {
    const double s = std::cos(M_PI * (2.0 * k + 1.0) / (2.0 * m));
    const double t = 0.5 * (s + 1.0);
    s_nodes(k) = s;
    y(k) = det((1.0 - t) * a + t * b);
  }
  Matrix vand(m, m);
  for (int k = 0; k < m; ++k) {
    double pw = 1.0;
    for (int j = 0; j < m; ++j) {
      vand(k, j) = pw;
      pw *= s_nodes(k);
    }
  }
  Vector c = vand.colPivHouseholderQr().solve(y);

  // p(t) = sum_j c_j (2t - 1)^j
  DetPolynomial p;
  p.coeffs.assign(m, 0.0);
  std::vector<double> pw{1.0};  // (2t - 1)^j, constant first
  for (int j = 0; j < m; ++j) {
    for (size_t i = 0; i < pw.size(); ++i) p.coeffs[i] += c(j) * pw[i];
    if (j + 1 < m) {
      std::vector<double> next(pw.size() + 1, 0.0);
      for (size_t i = 0; i < pw.size(); ++i) {
        next[i] -= pw[i];
        next[i + 1] += 2.0 * pw[i];
      }
      pw = std::move(next);
    }
  }
  return p;
}

std::vector<double> real_roots_in_unit_interval(const DetPolynomial& p,
                                                double imag_tol,
                                                double merge_tol) {
  double maxc = 0.0;
  for (double c : p.coeffs) maxc = std::max(maxc, std::fabs(c));
  if (maxc == 0.0) return {};  // identically zero: no isolated roots

  int deg = p.degree();
  while (deg > 0 && std::fabs(p.coeffs[deg]) <= 1e-12 * maxc) --deg;
  if (deg == 0) return {};

  Matrix companion = Matrix::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p.coeffs[i] / p.coeffs[deg];

  Eigen::EigenSolver<Matrix> es(companion);
  std::vector<double> roots;
  for (int i = 0; i < deg; ++i) {
    const auto ev = es.eigenvalues()(i);
    if (std::fabs(ev.imag()) > imag_tol) continue;
    double t = ev.real();
    if (t < -0.1 || t > 1.1) continue;
    // A few Newton steps sharpen companion eigenvalues; keep the best seen.
    for (int it = 0; it < 3; ++it) {
      const double d = p.derivative_at(t);
      if (d == 0.0) break;
      const double step = p(t) / d;
      const double cand = t - step;
      if (!std::isfinite(cand) || std::fabs(p(cand)) > std::fabs(p(t))) break;
      t = cand;
    }
    if (t > 0.0 && t < 1.0) roots.push_back(t);
  }
  std::sort(roots.begin(), roots.end());

  std::vector<double> dedup;
  for (size_t i = 0; i < roots.size();) {
    size_t j = i + 1;
    double sum = roots[i];
    while (j < roots.size() && roots[j] - roots[j - 1] <= merge_tol) {
      sum += roots[j];
      ++j;
    }
    dedup.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return dedup;
}

}  // namespace glpath
