#include "rmpslab/montecarlo.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace rmpslab {

unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned workers = std::min(hw, 8u);
  if (const char* env = std::getenv("RMPS_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) workers = static_cast<unsigned>(v);
  }
  return workers;
}

double pairwise_sum(const double* v, std::size_t count, std::size_t stride) {
  if (count == 0) return 0.0;
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += v[i * stride];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(v, half, stride) + pairwise_sum(v + half * stride, count - half, stride);
}

SampleMatrix run_samples(std::size_t samples, std::size_t width, const RngStream& base,
                         const SampleKernel& kernel, unsigned workers_override) {
  if (samples == 0 || width == 0)
    throw std::invalid_argument("run_samples: samples and width must be positive");
  SampleMatrix m;
  m.samples = samples;
  m.width = width;
  m.values.assign(samples * width, 0.0);

  std::size_t workers = workers_override ? workers_override : worker_count();
  workers = std::min<std::size_t>(workers, samples);

  auto run_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      RngStream stream = base.substream(s);
      kernel(s, stream, &m.values[s * width]);
    }
  };

  if (workers <= 1) {
    run_range(0, samples);
    return m;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (samples + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(samples, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(run_range, lo, hi);
  }
  for (std::thread& t : pool) t.join();
  return m;
}

EstimatorSummary summarize_column(const SampleMatrix& m, std::size_t col) {
  if (col >= m.width) throw std::invalid_argument("summarize_column: column out of range");
  if (m.samples == 0) throw std::invalid_argument("summarize_column: empty matrix");

  EstimatorSummary out;
  out.samples = m.samples;
  const double* base = m.values.data() + col;
  out.mean = pairwise_sum(base, m.samples, m.width) / static_cast<double>(m.samples);
  if (m.samples < 2) return out;

  std::vector<double> dev2(m.samples);
  for (std::size_t s = 0; s < m.samples; ++s) {
    const double d = base[s * m.width] - out.mean;
    dev2[s] = d * d;
  }
  const double ss = pairwise_sum(dev2.data(), m.samples, 1);
  out.stderr_ = std::sqrt(ss / (static_cast<double>(m.samples) - 1.0)) /
                std::sqrt(static_cast<double>(m.samples));
  return out;
}

EstimatorSummary monte_carlo_estimate(const std::function<double(const MpsState&)>& functional,
                                      const RmpsEnsembleConfig& cfg, std::size_t samples,
                                      const RngStream& rng) {
  if (samples < 2) throw std::invalid_argument("monte_carlo_estimate: samples must be >= 2");
  cfg.validate();
  const SampleMatrix m = run_samples(
      samples, 1, rng,
      [&](std::size_t, RngStream& stream, double* out) { out[0] = functional(sample_rmps(cfg, stream)); });
  return summarize_column(m, 0);
}

}  // namespace rmpslab
