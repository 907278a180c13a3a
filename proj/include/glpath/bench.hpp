#pragma once
// Monte Carlo survey of intrinsic/extrinsic path ratios over random pairs of
// positive-determinant matrices, with deterministic per-sample streams.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "glpath/types.hpp"

namespace glpath {

// Counter-based generator: each (seed, stream) pair yields an independent
// sequence, so results do not depend on how work is scheduled over threads.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();   // standard normal

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Square matrix with iid standard normal entries, reflected to positive
// determinant by negating the first row when needed.
Matrix sample_glplus(int n, Rng& rng);

enum class Ensemble { kGaussian, kNearSingular };

struct EstimateOptions {
  bool shorten = false;
  Ensemble ensemble = Ensemble::kGaussian;
  int threads = 0;  // 0 picks the hardware concurrency
  double eps = kDefaultEps;
};

struct SampleRecord {
  double d_ext = 0.0;
  double length = 0.0;
  double ratio = 0.0;
  bool feasible = false;
  double min_det = 0.0;
};

struct ConstantEstimate {
  int n = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
  int infeasible_count = 0;
  EstimateOptions options;
  std::vector<SampleRecord> records;
};

ConstantEstimate estimate_constant(int n, int samples, std::uint64_t seed,
                                   const EstimateOptions& options = {});

// Endpoint pair whose connecting chord has a tangential determinant root at
// t = 1/2, passing within 2*s of the rank n-2 stratum.
std::pair<Matrix, Matrix> adversarial_family(int n, double s);

std::string estimate_to_json(const ConstantEstimate& e, int indent = 2);
std::string estimate_to_csv(const ConstantEstimate& e);

}  // namespace glpath
