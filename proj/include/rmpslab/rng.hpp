#pragma once
// Splittable deterministic RNG. Every stream is named by the key path
// (master seed, stream index, substream indices...); draws depend only on that
// key path, never on worker scheduling, which is what makes Monte Carlo runs
// reproducible independent of thread count.

#include <complex>
#include <cstdint>
#include <random>

namespace rmpslab {

std::uint64_t splitmix64(std::uint64_t x);

class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  // Child stream keyed by (master seed, stream index, k). Distinct k give
  // statistically independent streams; same k reproduces the same stream.
  RngStream substream(std::uint64_t k) const;

  std::uint64_t master_seed() const { return master_; }
  std::uint64_t stream_index() const { return index_; }

  std::uint64_t next_u64();
  double uniform();    // [0, 1)
  double gaussian();   // N(0, 1), stateless Box-Muller (cosine branch)
  std::complex<double> complex_gaussian();  // E|z|^2 = 1

 private:
  std::uint64_t master_;
  std::uint64_t index_;
  std::mt19937_64 eng_;
};

}  // namespace rmpslab
