#include "glpath/path.hpp"

#include <stdexcept>

#include "json.hpp"

#include "glpath/matrix.hpp"
#include "glpath/strata.hpp"

namespace glpath {

PolylinePath::PolylinePath(std::vector<Matrix> nodes) {
  for (const Matrix& m : nodes) append(m);
}

void PolylinePath::append(const Matrix& node) {
  check_square(node, "PolylinePath::append");
  if (!nodes_.empty()) {
    if (node.rows() != nodes_.back().rows()) {
      throw std::invalid_argument("PolylinePath::append: dimension mismatch");
    }
    if ((node - nodes_.back()).norm() == 0.0) return;
  }
  nodes_.push_back(node);
}

void PolylinePath::extend(const PolylinePath& other) {
  for (const Matrix& m : other.nodes_) append(m);
}

double PolylinePath::length() const {
  double acc = 0.0;
  for (size_t i = 1; i < nodes_.size(); ++i) {
    acc += (nodes_[i] - nodes_[i - 1]).norm();
  }
  return acc;
}

PathCertificate make_certificate(const Matrix& a, const Matrix& b,
                                 PolylinePath path, double eps_used,
                                 std::uint64_t seed) {
  check_same_size(a, b, "make_certificate");
  if (path.empty()) {
    throw std::invalid_argument("make_certificate: empty path");
  }
  PathCertificate c;
  c.n = static_cast<int>(a.rows());
  c.a = a;
  c.b = b;
  c.d_ext = frobenius_dist(a, b);
  c.eps_used = eps_used;
  c.seed = seed;

  const auto& nodes = path.nodes();
  double min_det = det(nodes[0]);
  double min_margin = distance_to_variety(nodes[0]);
  for (size_t i = 1; i < nodes.size(); ++i) {
    min_margin = std::min(min_margin, distance_to_variety(nodes[i]));
    for (int j = 1; j <= kOversample; ++j) {
      const double t = static_cast<double>(j) / kOversample;
      min_det = std::min(min_det, det((1.0 - t) * nodes[i - 1] + t * nodes[i]));
    }
  }
  c.length = path.length();
  c.ratio = (c.d_ext == 0.0) ? 0.0 : c.length / c.d_ext;
  c.min_det = min_det;
  c.min_margin = min_margin;
  c.feasible = min_det > 0.0;
  c.path = std::move(path);
  return c;
}

namespace {

nlohmann::json matrix_entries(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string certificate_to_json(const PathCertificate& c, int indent) {
  nlohmann::json j;
  j["n"] = c.n;
  j["endpoints"]["a"] = matrix_entries(c.a);
  j["endpoints"]["b"] = matrix_entries(c.b);
  nlohmann::json nodes = nlohmann::json::array();
  for (const Matrix& m : c.path.nodes()) nodes.push_back(matrix_entries(m));
  j["nodes"] = nodes;
  j["d_ext"] = c.d_ext;
  j["length"] = c.length;
  j["ratio"] = c.ratio;
  j["min_det"] = c.min_det;
  j["min_margin"] = c.min_margin;
  j["feasible"] = c.feasible;
  j["eps_used"] = c.eps_used;
  j["seed"] = c.seed;
  return j.dump(indent) + "\n";
}

}  // namespace glpath
