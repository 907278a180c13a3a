#include "glpath/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>
#include <vector>

#include "json.hpp"

#include "glpath/matrix.hpp"
#include "glpath/path.hpp"
#include "glpath/shorten.hpp"
#include "glpath/surgery.hpp"
#include "glpath/svd.hpp"

namespace glpath {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : state_(mix64(seed) ^ mix64(0x9e3779b97f4a7c15ULL * (stream + 1))) {}

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Matrix sample_glplus(int n, Rng& rng) {
  if (n < 1 || n > kMaxSize) {
    throw std::invalid_argument("sample_glplus: size out of range");
  }
  while (true) {
    Matrix a(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        a(i, j) = rng.normal();
      }
    }
    const double d = det(a);
    if (d == 0.0) continue;  // essentially impossible, but resample
    if (d < 0.0) a.row(0) = -a.row(0);
    return a;
  }
}

namespace {

Matrix draw_endpoint(int n, Rng& rng, Ensemble ensemble) {
  Matrix a = sample_glplus(n, rng);
  if (ensemble == Ensemble::kNearSingular) {
    SvdFactorization f = svd(a);
    f.sigma(n - 1) = 1e-4 * f.sigma(0);
    a = f.u * f.sigma.asDiagonal() * f.v.transpose();
  }
  return a;
}

double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  const auto m = static_cast<long>(sorted.size());
  long idx = static_cast<long>(std::ceil(p * m)) - 1;
  idx = std::max(0L, std::min(idx, m - 1));
  return sorted[static_cast<size_t>(idx)];
}

}  // namespace

ConstantEstimate estimate_constant(int n, int samples, std::uint64_t seed,
                                   const EstimateOptions& options) {
  if (n < 1 || n > kMaxSize) {
    throw std::invalid_argument("estimate_constant: size out of range");
  }
  if (samples < 1) {
    throw std::invalid_argument("estimate_constant: need at least one sample");
  }
  if (!(options.eps > 0.0 && options.eps <= 0.1)) {
    throw std::invalid_argument("estimate_constant: eps must lie in (0, 0.1]");
  }

  ConstantEstimate est;
  est.n = n;
  est.samples = samples;
  est.seed = seed;
  est.options = options;
  est.records.resize(samples);

  std::atomic<int> cursor{0};
  const auto worker = [&]() {
    while (true) {
      const int i = cursor.fetch_add(1);
      if (i >= samples) return;
      Rng rng(seed, static_cast<std::uint64_t>(i));
      const Matrix a = draw_endpoint(n, rng, options.ensemble);
      const Matrix b = draw_endpoint(n, rng, options.ensemble);

      SampleRecord rec;
      rec.d_ext = (a - b).norm();
      try {
        PathCertificate cert = build_path(a, b, options.eps);
        if (options.shorten && cert.feasible) {
          try {
            PathCertificate tightened = make_certificate(
                a, b, shorten_path(cert.path, glplus_oracle(n)),
                cert.eps_used, cert.seed);
            if (tightened.feasible && tightened.length < cert.length) {
              cert = std::move(tightened);
            }
          } catch (const std::exception&) {
            // shortening is best effort; keep the certified path
          }
        }
        rec.length = cert.length;
        rec.ratio = cert.ratio;
        rec.feasible = cert.feasible;
        rec.min_det = cert.min_det;
      } catch (const std::exception&) {
        rec.feasible = false;
      }
      est.records[static_cast<size_t>(i)] = rec;
    }
  };

  int threads = options.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  threads = std::min(threads, samples);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<double> ratios;
  ratios.reserve(est.records.size());
  for (const SampleRecord& rec : est.records) {
    if (!rec.feasible) {
      ++est.infeasible_count;
      continue;
    }
    if (rec.d_ext == 0.0) continue;  // coincident pair, ratio 0 by convention
    ratios.push_back(rec.ratio);
    est.max_ratio = std::max(est.max_ratio, rec.ratio);
  }
  std::sort(ratios.begin(), ratios.end());
  est.p50 = quantile(ratios, 0.50);
  est.p90 = quantile(ratios, 0.90);
  est.p99 = quantile(ratios, 0.99);
  return est;
}

std::pair<Matrix, Matrix> adversarial_family(int n, double s) {
  if (n < 2 || n > kMaxSize) {
    throw std::invalid_argument("adversarial_family: size out of range");
  }
  if (!(s > 0.0 && s <= 0.1)) {
    throw std::invalid_argument("adversarial_family: s must lie in (0, 0.1]");
  }
  Matrix a = Matrix::Identity(n, n);
  Matrix b = Matrix::Identity(n, n);
  b(0, 0) = -1.0;
  b(1, 1) = -1.0;
  b(0, 1) = s;
  return {a, b};
}

std::string estimate_to_json(const ConstantEstimate& e, int indent) {
  nlohmann::json j;
  j["n"] = e.n;
  j["samples"] = e.samples;
  j["seed"] = e.seed;
  j["eps"] = e.options.eps;
  j["ensemble"] =
      e.options.ensemble == Ensemble::kGaussian ? "gaussian" : "near-singular";
  j["shorten"] = e.options.shorten;
  j["max_ratio"] = e.max_ratio;
  j["quantiles"] = {{"p50", e.p50}, {"p90", e.p90}, {"p99", e.p99}};
  j["infeasible_count"] = e.infeasible_count;
  return j.dump(indent) + "\n";
}

std::string estimate_to_csv(const ConstantEstimate& e) {
  std::string out = "index,d_ext,length,ratio,feasible,min_det\n";
  char line[256];
  for (size_t i = 0; i < e.records.size(); ++i) {
    const SampleRecord& r = e.records[i];
    std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g,%d,%.17g\n", i,
                  r.d_ext, r.length, r.ratio, r.feasible ? 1 : 0, r.min_det);
    out += line;
  }
  return out;
}

}  // namespace glpath
