#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "glpath/bench.hpp"
#include "glpath/cone2.hpp"
#include "glpath/matrix.hpp"
#include "glpath/strata.hpp"
#include "glpath/surgery.hpp"
#include "glpath/svd.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace glpath;
using namespace glpath::testing;

TEST_CASE("segment splitting on fixed pairs") {
  Matrix i2 = Matrix::Identity(2, 2);
  Matrix d(2, 2);
  d << 1, 0, 0, -1;
  SegmentDecomposition s = split_segment(i2, d);
  REQUIRE(s.crossings.size() == 1);
  CHECK(s.crossings[0] == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(s.interval_signs.size() == 2);
  CHECK(s.interval_signs[0] == 1);
  CHECK(s.interval_signs[1] == -1);

  SegmentDecomposition t = split_segment(i2, Matrix(-i2));
  REQUIRE(t.crossings.size() == 1);
  CHECK(std::abs(t.crossings[0] - 0.5) <= 1e-6);
  REQUIRE(t.interval_signs.size() == 2);
  CHECK(t.interval_signs[0] == 1);
  CHECK(t.interval_signs[1] == 1);
}

TEST_CASE("segment splitting matches dense determinant sampling") {
  Rng rng(61, 0);
  for (int rep = 0; rep < 50; ++rep) {
    Matrix a = random_matrix(4, rng), b = random_matrix(4, rng);
    SegmentDecomposition s = split_segment(a, b);
    CHECK(signs_match_dense(s, a, b, 1000));
  }
}

TEST_CASE("a chord inside the variety is one vanishing interval") {
  Matrix a = Matrix::Zero(3, 3), b = Matrix::Zero(3, 3);
  a(0, 1) = 1.0;
  a(1, 2) = 2.0;
  b(0, 1) = -3.0;
  b(1, 2) = 0.5;
  b(0, 2) = 1.0;
  SegmentDecomposition s = split_segment(a, b);
  CHECK(s.crossings.empty());
  REQUIRE(s.interval_signs.size() == 1);
  CHECK(s.interval_signs[0] == 0);
}

TEST_CASE("variety arc along a singular linear subspace is the chord") {
  Matrix p = Matrix::Zero(3, 3), q = Matrix::Zero(3, 3);
  p(0, 1) = 1.0;
  p(1, 2) = 1.0;
  p(2, 2) = 0.0;
  q(0, 1) = 2.0;
  q(0, 2) = -1.0;
  q(1, 2) = 3.0;
  PolylinePath arc = variety_arc(p, q, 0.05);
  CHECK(arc.length() ==
        doctest::Approx(frobenius_dist(p, q)).epsilon(1e-9));
  for (const Matrix& node : arc.nodes()) {
    CHECK(distance_to_variety(node) <= 1e-10 * (1.0 + node.norm()));
  }
}

TEST_CASE("variety arc from the apex is radial") {
  Rng rng(62, 0);
  Matrix q = random_rank(3, 2, rng);
  PolylinePath arc = variety_arc(Matrix::Zero(3, 3), q, 0.05);
  CHECK(arc.length() == doctest::Approx(q.norm()).epsilon(1e-9));
}

TEST_CASE("variety arc stays on the variety for random singular pairs") {
  Rng rng(63, 0);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix p = random_rank(3, 2, rng), q = random_rank(3, 2, rng);
    PolylinePath arc = variety_arc(p, q, 0.02);
    CHECK(arc.length() >= frobenius_dist(p, q) - 1e-9);
    CHECK(std::isfinite(arc.length()));
    for (const Matrix& node : arc.nodes()) {
      SvdFactorization f = svd(node);
      CHECK(f.sigma(2) <= 1e-8 * std::max(f.sigma(0), 1e-300));
    }
  }
  CHECK_THROWS_AS(variety_arc(Matrix::Identity(3, 3),
                              random_rank(3, 2, rng), 0.05),
                  std::invalid_argument);
}

TEST_CASE("stratum ascent of a constant rank one path") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1.0;
  PolylinePath path;
  path.append(a);
  path.append(a);
  const double eps = 1e-2;
  PolylinePath up = ascend_stratum(path, 1, eps);
  Matrix want = a;
  want(1, 1) = eps;
  for (const Matrix& node : up.nodes()) {
    CHECK((node - want).norm() <= 1e-12);
  }
}

TEST_CASE("stratum ascent from the apex") {
  PolylinePath path;
  path.append(Matrix::Zero(2, 2));
  const double eps = 1e-2;
  PolylinePath up = ascend_stratum(path, 0, eps);
  REQUIRE(up.size() == 1);
  CHECK(up.front().norm() == doctest::Approx(eps).epsilon(1e-10));
  CHECK(classify_rank(up.front()).rank == 1);
}

TEST_CASE("stratum ascent of a moving rank one path") {
  Vector w(3);
  w << 1.0, 1.0, 1.0;
  w.normalize();
  PolylinePath path;
  const int steps = 50;
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    Vector v(3);
    v << std::cos(t), std::sin(t), 0.0;
    path.append(Matrix(v * w.transpose()));
  }
  const double eps = 1e-2;
  PolylinePath up = ascend_stratum(path, 1, eps);
  double maxnorm = 0.0;
  for (const Matrix& node : path.nodes())
    maxnorm = std::max(maxnorm, node.norm());
  for (const Matrix& node : up.nodes()) {
    SvdFactorization f = svd(node);
    CHECK(classify_rank(node).rank == 2);
    CHECK(f.sigma(2) <= 1e-8 * std::max(f.sigma(0), 1e-300));
  }
  CHECK(up.length() <= path.length() + 2.0 * eps * (path.length() + 2.0 * maxnorm));

  CHECK_THROWS_AS(ascend_stratum(up, 2, eps), std::invalid_argument);
}

TEST_CASE("pushout of a single corank one node") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  PolylinePath path;
  path.append(a);
  const double eps = 1e-3;
  PolylinePath out = pushout_to_glplus(path, eps);
  REQUIRE(out.size() == 1);
  const Matrix& m = out.front();
  CHECK(m(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m(2, 2) > 0.0);
  CHECK(m(2, 2) <= 2.0 * eps);
  CHECK(det(m) == doctest::Approx(m(2, 2)).epsilon(1e-12));
}

TEST_CASE("pushout rejects deeper singularities") {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1.0;
  PolylinePath path;
  path.append(a);
  CHECK_THROWS_AS(pushout_to_glplus(path, 1e-3), std::invalid_argument);
}

TEST_CASE("pushout of a projected chord keeps the determinant positive") {
  Rng rng(64, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix p = random_rank(3, 2, rng), q = random_rank(3, 2, rng);
    // Resolution fine enough that chord midpoints cannot undercut the bump;
    // coarser arcs are the caller's problem and go through refinement there.
    PolylinePath arc = variety_arc(p, q, 0.005);
    bool deep = false;
    for (const Matrix& node : arc.nodes()) {
      if (classify_rank(node).rank < 2) deep = true;
    }
    if (deep) continue;  // those instances go through the ascent machinery
    const double eps = 1e-3;
    PolylinePath out = pushout_to_glplus(arc, eps);
    const auto& nodes = out.nodes();
    for (size_t i = 0; i < nodes.size(); ++i) {
      CHECK(det(nodes[i]) > 0.0);
      if (i > 0) {
        CHECK(det(Matrix(0.5 * (nodes[i - 1] + nodes[i]))) > 0.0);
      }
    }
    const double terms = arc.front().norm() + arc.back().norm();
    CHECK(out.length() <= arc.length() + 2.0 * eps * (arc.length() + terms));
  }
}

TEST_CASE("sphere connection between a matrix and itself") {
  Matrix p = Matrix::Identity(3, 3);
  PolylinePath path = sphere_connect(p, p, 1.0);
  CHECK(path.length() <= 1e-12);
}

TEST_CASE("sphere connection between rotations stays a rotation") {
  Matrix p = Matrix::Identity(3, 3);
  Matrix q = Matrix::Identity(3, 3);
  q(0, 0) = 0.0;
  q(0, 1) = -1.0;
  q(1, 0) = 1.0;
  q(1, 1) = 0.0;
  const double radius = std::sqrt(3.0);
  PolylinePath path = sphere_connect(p, q, radius);
  for (const Matrix& node : path.nodes()) {
    CHECK(std::abs(node.norm() - radius) <= 1e-9 * radius);
    CHECK((node.transpose() * node - Matrix::Identity(3, 3)).norm() <= 1e-9);
    CHECK(det(node) > 0.0);
  }
}

TEST_CASE("sphere connection keeps the determinant positive") {
  Rng rng(65, 0);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix p = sample_glplus(3, rng), q = sample_glplus(3, rng);
    PolylinePath path = sphere_connect(p, q, 1.0);
    const auto& nodes = path.nodes();
    for (size_t i = 0; i < nodes.size(); ++i) {
      CHECK(det(nodes[i]) > 0.0);
      if (i > 0) CHECK(det(Matrix(0.5 * (nodes[i - 1] + nodes[i]))) > 0.0);
    }
    CHECK(path.length() <= 20.0);
  }
}

TEST_CASE("a positive chord is returned unchanged") {
  Rng rng(66, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix a = sample_glplus(3, rng);
    Matrix g = random_matrix(3, rng);
    Matrix b = a + (0.2 * a.norm() / g.norm()) * g;
    auto dets = dense_chord_dets(a, b, 200);
    bool positive = true;
    for (double v : dets) positive = positive && v > 0.0;
    if (!positive) continue;
    PathCertificate c = build_path(a, b);
    CHECK(c.feasible);
    CHECK(c.ratio == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("coincident endpoints yield the conventional zero ratio") {
  Matrix a = Matrix::Identity(3, 3);
  PathCertificate c = build_path(a, a);
  CHECK(c.feasible);
  CHECK(c.d_ext == 0.0);
  CHECK(c.ratio == 0.0);
  CHECK(c.path.size() == 1);
}

TEST_CASE("general and planar constructions agree on 2x2 inputs") {
  Rng rng(67, 0);
  for (int rep = 0; rep < 30; ++rep) {
    Matrix a = sample_glplus(2, rng), b = sample_glplus(2, rng);
    PathCertificate c1 = build_path(a, b);
    PathCertificate c2 = surgery2(a, b, kDefaultEps);
    REQUIRE(c1.feasible);
    REQUIRE(c2.feasible);
    if (c1.d_ext == 0.0) continue;
    CHECK(std::abs(c1.ratio - c2.ratio) <= 0.1 * std::min(c1.ratio, c2.ratio));
  }
}

TEST_CASE("a crossing three dimensional chord is rerouted feasibly") {
  Rng rng(68, 0);
  Matrix a = Matrix::Identity(3, 3);
  Matrix b0 = Matrix::Zero(3, 3);
  b0.diagonal() << -1.0, -1.0, 1.0;
  Matrix b = b0 * (Matrix::Identity(3, 3) + 0.1 * random_matrix(3, rng));
  REQUIRE(det(b) > 0.0);
  REQUIRE(!split_segment(a, b).crossings.empty());
  PathCertificate c = build_path(a, b);
  CHECK(c.feasible);
  CHECK(c.min_det > 0.0);
  CHECK(c.ratio >= 1.0 - 1e-6);
  CHECK(std::isfinite(c.ratio));
}

TEST_CASE("a null direction flip inside the travel stretch stays feasible") {
  // The chord crosses twice and the on-variety travel between the crossings
  // must swap the vanishing direction through a rank one point; the flanking
  // segments of any pointwise raise dip below the variety there, which is
  // exactly the case the rotation detour exists for.
  Matrix a = Matrix::Identity(3, 3);
  Matrix b(3, 3);
  b << -1.0, 0.1, 0.0, 0.1, -1.0, 0.0, 0.0, 0.0, 1.0;
  REQUIRE(det(b) > 0.0);
  REQUIRE(split_segment(a, b).crossings.size() == 2);
  PathCertificate c = build_path(a, b, 1e-3);
  CHECK(c.feasible);
  CHECK(c.min_det > 0.0);
  CHECK(c.ratio >= 1.0 - 1e-6);
  CHECK(c.eps_used == 1e-3);

  // Same flip one size up, embedded in a larger identity block.
  Matrix a4 = Matrix::Identity(4, 4);
  Matrix b4 = Matrix::Identity(4, 4);
  b4.topLeftCorner(2, 2) = b.topLeftCorner(2, 2);
  PathCertificate c4 = build_path(a4, b4, 1e-3);
  CHECK(c4.feasible);
  CHECK(c4.min_det > 0.0);
}

TEST_CASE("feasibility survives a halved push magnitude") {
  Rng rng(69, 0);
  int checked = 0;
  for (int rep = 0; rep < 20 && checked < 5; ++rep) {
    Matrix a = sample_glplus(2, rng), b = sample_glplus(2, rng);
    if (split_segment(a, b).crossings.empty()) continue;
    PathCertificate c1 = build_path(a, b, 1e-3);
    if (!c1.feasible) continue;
    PathCertificate c2 = build_path(a, b, 5e-4);
    CHECK(c2.feasible);
    ++checked;
  }
  CHECK(checked == 5);
}

TEST_CASE("construction rejects bad inputs") {
  Matrix a = Matrix::Identity(2, 2);
  Matrix neg(2, 2);
  neg << 1, 0, 0, -1;
  CHECK_THROWS_AS(build_path(a, neg), std::invalid_argument);
  CHECK_THROWS_AS(build_path(a, a, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_path(a, a, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_path(a, Matrix::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("certificates serialize with the documented fields") {
  Rng rng(70, 0);
  Matrix a = sample_glplus(2, rng), b = sample_glplus(2, rng);
  PathCertificate c = build_path(a, b);
  nlohmann::json j = nlohmann::json::parse(certificate_to_json(c));
  for (const char* key :
       {"n", "endpoints", "nodes", "d_ext", "length", "ratio", "min_det",
        "min_margin", "feasible", "eps_used", "seed"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["n"] == 2);
  CHECK(j["feasible"] == c.feasible);
  CHECK(j["nodes"].size() == c.path.size());
  CHECK(j["endpoints"]["a"].size() == 2);
}
