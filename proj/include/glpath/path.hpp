#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "glpath/types.hpp"

namespace glpath {

// Piecewise linear path through matrix space. All nodes share one dimension;
// appending a node equal to the current tail is a no-op, so assembling a path
// from touching pieces never duplicates junctions.
class PolylinePath {
 public:
  PolylinePath() = default;
  explicit PolylinePath(std::vector<Matrix> nodes);

  void append(const Matrix& node);
  void extend(const PolylinePath& other);

  const std::vector<Matrix>& nodes() const { return nodes_; }
  const Matrix& front() const { return nodes_.front(); }
  const Matrix& back() const { return nodes_.back(); }
  size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  int dim() const { return nodes_.empty() ? 0 : static_cast<int>(nodes_[0].rows()); }

  double length() const;

 private:
  std::vector<Matrix> nodes_;
};

// Verified summary of a path between two matrices with positive determinant.
// min_det is taken over the nodes and ten interior samples of every segment;
// feasible means that minimum is strictly positive. When the endpoints
// coincide the ratio is reported as 0 by convention.
struct PathCertificate {
  int n = 0;
  Matrix a;
  Matrix b;
  PolylinePath path;
  double d_ext = 0;
  double length = 0;
  double ratio = 0;
  double min_det = 0;
  double min_margin = 0;  // smallest distance_to_variety over the nodes
  bool feasible = false;
  double eps_used = 0;
  std::uint64_t seed = 0;
};

// Number of interior samples per segment used for the min_det sweep.
inline constexpr int kOversample = 10;

// Fills the derived fields of a certificate from its path.
PathCertificate make_certificate(const Matrix& a, const Matrix& b,
                                 PolylinePath path, double eps_used,
                                 std::uint64_t seed = 0);

std::string certificate_to_json(const PathCertificate& c, int indent = 2);

}  // namespace glpath
