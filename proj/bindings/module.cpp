#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "glpath/bench.hpp"
#include "glpath/cone2.hpp"
#include "glpath/path.hpp"
#include "glpath/shorten.hpp"
#include "glpath/strata.hpp"
#include "glpath/surgery.hpp"

namespace py = pybind11;
using namespace glpath;

namespace {

py::dict certificate_dict(const PathCertificate& c) {
  py::dict d;
  d["n"] = c.n;
  d["a"] = c.a;
  d["b"] = c.b;
  d["nodes"] = c.path.nodes();
  d["d_ext"] = c.d_ext;
  d["length"] = c.length;
  d["ratio"] = c.ratio;
  d["min_det"] = c.min_det;
  d["min_margin"] = c.min_margin;
  d["feasible"] = c.feasible;
  d["eps_used"] = c.eps_used;
  d["seed"] = c.seed;
  return d;
}

EstimateOptions options_from(bool shorten, const std::string& ensemble,
                             int threads, double eps) {
  EstimateOptions o;
  o.shorten = shorten;
  if (ensemble == "gaussian") {
    o.ensemble = Ensemble::kGaussian;
  } else if (ensemble == "near-singular") {
    o.ensemble = Ensemble::kNearSingular;
  } else {
    throw std::invalid_argument("ensemble must be gaussian or near-singular");
  }
  o.threads = threads;
  o.eps = eps;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "paths through the positive determinant region of matrix space";

  m.def("build_path", [](const Matrix& a, const Matrix& b, double eps) {
          return certificate_dict(build_path(a, b, eps));
        },
        py::arg("a"), py::arg("b"), py::arg("eps") = kDefaultEps,
        "certified polyline from a to b through positive determinants");

  m.def("surgery2", [](const Matrix& a, const Matrix& b, double eps) {
          return certificate_dict(surgery2(a, b, eps));
        },
        py::arg("a"), py::arg("b"), py::arg("eps") = kDefaultEps,
        "closed form 2x2 pipeline, for cross checking build_path");

  m.def("split_segment", [](const Matrix& a, const Matrix& b) {
          SegmentDecomposition d = split_segment(a, b);
          return py::make_tuple(d.crossings, d.interval_signs);
        },
        py::arg("a"), py::arg("b"),
        "determinant roots in [0,1] along the chord and the sign per interval");

  m.def("project_to_rank", &project_to_rank, py::arg("a"), py::arg("rank"),
        "nearest matrix of the given rank in Frobenius norm");

  m.def("distance_to_variety", &distance_to_variety, py::arg("a"),
        "Frobenius distance to the nearest singular matrix");

  m.def("cone_path", [](const Matrix& p, const Matrix& q) {
          PolylinePath path = cone_path(p, q);
          return py::make_tuple(path.nodes(), path.length());
        },
        py::arg("p"), py::arg("q"),
        "polyline between singular 2x2 matrices staying on the cone");

  m.def("cusp_ratio", &cusp_ratio, py::arg("h"), py::arg("resolution"),
        "intrinsic over extrinsic distance across the cusp at height h");

  m.def("sample_glplus", [](int n, std::uint64_t seed, std::uint64_t stream) {
          Rng rng(seed, stream);
          return sample_glplus(n, rng);
        },
        py::arg("n"), py::arg("seed"), py::arg("stream") = 0,
        "random positive determinant matrix with Gaussian entries");

  m.def("estimate_constant", [](int n, int samples, std::uint64_t seed,
                                bool shorten, const std::string& ensemble,
                                int threads, double eps) {
          ConstantEstimate e = estimate_constant(
              n, samples, seed, options_from(shorten, ensemble, threads, eps));
          py::dict d;
          d["n"] = e.n;
          d["samples"] = e.samples;
          d["seed"] = e.seed;
          d["max_ratio"] = e.max_ratio;
          d["p50"] = e.p50;
          d["p90"] = e.p90;
          d["p99"] = e.p99;
          d["infeasible_count"] = e.infeasible_count;
          py::list records;
          for (const SampleRecord& r : e.records) {
            py::dict rec;
            rec["d_ext"] = r.d_ext;
            rec["length"] = r.length;
            rec["ratio"] = r.ratio;
            rec["feasible"] = r.feasible;
            rec["min_det"] = r.min_det;
            records.append(rec);
          }
          d["records"] = records;
          return d;
        },
        py::arg("n"), py::arg("samples"), py::arg("seed"),
        py::arg("shorten") = false, py::arg("ensemble") = "gaussian",
        py::arg("threads") = 0, py::arg("eps") = kDefaultEps,
        "ratio survey over random pairs; deterministic for a fixed seed");
}
