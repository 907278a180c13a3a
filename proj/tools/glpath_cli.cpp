// Command line front end: builds certified paths through the
// positive-determinant matrices, runs the Monte Carlo ratio estimator, and
// prints projection and chord-splitting diagnostics.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "glpath/bench.hpp"
#include "glpath/io.hpp"
#include "glpath/matrix.hpp"
#include "glpath/path.hpp"
#include "glpath/shorten.hpp"
#include "glpath/strata.hpp"
#include "glpath/surgery.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << content;
}

glpath::Matrix load_sized(const std::string& arg, int n, const char* which) {
  glpath::Matrix m = glpath::load_matrix_arg(arg);
  if (static_cast<int>(m.rows()) != n) {
    throw std::invalid_argument(std::string(which) +
                                ": matrix size does not match --n");
  }
  return m;
}

int run_path(int n, const std::string& a_arg, const std::string& b_arg,
             double eps, const std::string& out) {
  const glpath::Matrix a = load_sized(a_arg, n, "--a");
  const glpath::Matrix b = load_sized(b_arg, n, "--b");
  const glpath::PathCertificate cert = glpath::build_path(a, b, eps);
  write_file(out, glpath::certificate_to_json(cert));
  std::printf("nodes %zu  length %.12g  ratio %.12g  min_det %.12g  %s\n",
              cert.path.size(), cert.length, cert.ratio, cert.min_det,
              cert.feasible ? "feasible" : "INFEASIBLE");
  return cert.feasible ? 0 : 1;
}

int run_estimate(int n, int samples, std::uint64_t seed, double eps,
                 bool shorten, const std::string& ensemble, int threads,
                 const std::string& out, const std::string& csv) {
  glpath::EstimateOptions options;
  options.shorten = shorten;
  options.threads = threads;
  options.eps = eps;
  if (ensemble == "gaussian") {
    options.ensemble = glpath::Ensemble::kGaussian;
  } else if (ensemble == "near-singular") {
    options.ensemble = glpath::Ensemble::kNearSingular;
  } else {
    throw std::invalid_argument("--ensemble must be gaussian or near-singular");
  }

  const glpath::ConstantEstimate est =
      glpath::estimate_constant(n, samples, seed, options);
  write_file(out, glpath::estimate_to_json(est));
  write_file(csv, glpath::estimate_to_csv(est));
  std::printf("n %d  samples %d  max_ratio %.12g  p99 %.12g  infeasible %d\n",
              est.n, est.samples, est.max_ratio, est.p99,
              est.infeasible_count);
  return 0;
}

int run_cusp_demo(const std::vector<double>& h_list, double resolution,
                  const std::string& csv) {
  std::string table = "h,resolution,d_ext,d_int,ratio\n";
  char line[256];
  for (double h : h_list) {
    const glpath::CuspProbe probe = glpath::cusp_probe(h, resolution);
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g\n", h,
                  resolution, probe.d_ext, probe.d_int, probe.ratio);
    table += line;
    std::printf("h %.6g  d_ext %.6g  d_int %.6g  ratio %.6g\n", h,
                probe.d_ext, probe.d_int, probe.ratio);
  }
  write_file(csv, table);
  return 0;
}

int run_project(int n, const std::string& a_arg, int rank) {
  const glpath::Matrix a = load_sized(a_arg, n, "--a");
  const glpath::Matrix projected = glpath::project_to_rank(a, rank);
  std::fputs(glpath::format_matrix_text(projected).c_str(), stdout);
  std::printf("distance %.17g\n", glpath::frobenius_dist(a, projected));
  return 0;
}

int run_split(int n, const std::string& a_arg, const std::string& b_arg) {
  const glpath::Matrix a = load_sized(a_arg, n, "--a");
  const glpath::Matrix b = load_sized(b_arg, n, "--b");
  const glpath::SegmentDecomposition dec = glpath::split_segment(a, b);
  std::string crossings = "crossings:";
  char buf[64];
  for (double t : dec.crossings) {
    std::snprintf(buf, sizeof(buf), " %.17g", t);
    crossings += buf;
  }
  std::string signs = "signs:";
  for (int s : dec.interval_signs) {
    signs += s > 0 ? " +" : (s < 0 ? " -" : " 0");
  }
  std::printf("%s\n%s\n", crossings.c_str(), signs.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paths, estimates, and diagnostics for GL+(n)"};
  app.require_subcommand(1);

  int path_n = 2;
  std::string path_a, path_b, path_out;
  double path_eps = glpath::kDefaultEps;
  CLI::App* path_cmd =
      app.add_subcommand("path", "build one certified path between two matrices");
  path_cmd->add_option("--n", path_n, "matrix size")->required();
  path_cmd->add_option("--a", path_a, "start matrix (file or inline)")->required();
  path_cmd->add_option("--b", path_b, "end matrix (file or inline)")->required();
  path_cmd->add_option("--eps", path_eps, "clearance parameter")->required();
  path_cmd->add_option("--out", path_out, "certificate JSON file")->required();

  int est_n = 2;
  int est_samples = 0;
  std::uint64_t est_seed = 0;
  double est_eps = glpath::kDefaultEps;
  bool est_shorten = false;
  std::string est_ensemble = "gaussian";
  int est_threads = 0;
  std::string est_out, est_csv;
  CLI::App* est_cmd =
      app.add_subcommand("estimate-c", "Monte Carlo ratio survey over random pairs");
  est_cmd->add_option("--n", est_n, "matrix size")->required();
  est_cmd->add_option("--samples", est_samples, "number of endpoint pairs")->required();
  est_cmd->add_option("--seed", est_seed, "master seed")->required();
  est_cmd->add_option("--eps", est_eps, "clearance parameter")->required();
  est_cmd->add_flag("--shorten", est_shorten, "run the chord shortener on each path");
  est_cmd->add_option("--ensemble", est_ensemble, "gaussian or near-singular");
  est_cmd->add_option("--threads", est_threads, "worker pool size (0 = hardware)");
  est_cmd->add_option("--out", est_out, "summary JSON file")->required();
  est_cmd->add_option("--csv", est_csv, "per-instance CSV file")->required();

  std::vector<double> cusp_h;
  double cusp_resolution = 0.0;
  std::string cusp_csv;
  CLI::App* cusp_cmd =
      app.add_subcommand("cusp-demo", "intrinsic/extrinsic ratios in the cusp region");
  cusp_cmd->add_option("--h-list", cusp_h, "heights to probe")
      ->delimiter(',')
      ->required();
  cusp_cmd->add_option("--resolution", cusp_resolution, "grid spacing")->required();
  cusp_cmd->add_option("--csv", cusp_csv, "output table")->required();

  int proj_n = 2;
  int proj_rank = 0;
  std::string proj_a;
  CLI::App* proj_cmd =
      app.add_subcommand("project", "nearest matrix of the given rank");
  proj_cmd->add_option("--n", proj_n, "matrix size")->required();
  proj_cmd->add_option("--a", proj_a, "matrix (file or inline)")->required();
  proj_cmd->add_option("--rank", proj_rank, "target rank")->required();

  int split_n = 2;
  std::string split_a, split_b;
  CLI::App* split_cmd =
      app.add_subcommand("split", "determinant crossings along a chord");
  split_cmd->add_option("--n", split_n, "matrix size")->required();
  split_cmd->add_option("--a", split_a, "start matrix (file or inline)")->required();
  split_cmd->add_option("--b", split_b, "end matrix (file or inline)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (path_cmd->parsed()) {
      return run_path(path_n, path_a, path_b, path_eps, path_out);
    }
    if (est_cmd->parsed()) {
      return run_estimate(est_n, est_samples, est_seed, est_eps, est_shorten,
                          est_ensemble, est_threads, est_out, est_csv);
    }
    if (cusp_cmd->parsed()) {
      return run_cusp_demo(cusp_h, cusp_resolution, cusp_csv);
    }
    if (proj_cmd->parsed()) {
      return run_project(proj_n, proj_a, proj_rank);
    }
    if (split_cmd->parsed()) {
      return run_split(split_n, split_a, split_b);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
