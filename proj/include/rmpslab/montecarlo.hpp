#pragma once
// Sample-parallel Monte Carlo with schedule-independent results: every sample
// owns the stream keyed by its index, workers fill disjoint slots of a
// preallocated value matrix, and reductions run as a deterministic pairwise
// tree over the full array — so mean and stderr are bit-identical for any
// worker count.

#include <cstdint>
#include <functional>
#include <vector>

#include "rmpslab/mps.hpp"
#include "rmpslab/rng.hpp"

namespace rmpslab {

struct EstimatorSummary {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample standard deviation / sqrt(samples)
  std::size_t samples = 0;
};

struct SampleMatrix {
  std::size_t samples = 0, width = 0;
  std::vector<double> values;  // row-major samples x width

  double at(std::size_t s, std::size_t col) const { return values[s * width + col]; }
};

// out points at `width` doubles for this sample.
using SampleKernel = std::function<void(std::size_t sample_index, RngStream& stream, double* out)>;

// Worker count: min(RMPS_LAB_THREADS if set, hardware). Always >= 1.
unsigned worker_count();

// Sample s draws from base.substream(s).
SampleMatrix run_samples(std::size_t samples, std::size_t width, const RngStream& base,
                         const SampleKernel& kernel, unsigned workers_override = 0);

double pairwise_sum(const double* v, std::size_t count, std::size_t stride = 1);
EstimatorSummary summarize_column(const SampleMatrix& m, std::size_t col);

// Mean/stderr of `functional` over i.i.d. ensemble draws; samples >= 2.
EstimatorSummary monte_carlo_estimate(const std::function<double(const MpsState&)>& functional,
                                      const RmpsEnsembleConfig& cfg, std::size_t samples,
                                      const RngStream& rng);

}  // namespace rmpslab
