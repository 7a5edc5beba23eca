#include "rmpslab/rng.hpp"

#include <cmath>
#include <numbers>

namespace rmpslab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_(master_seed), index_(stream_index) {
  std::uint64_t h = splitmix64(master_);
  h = splitmix64(h ^ splitmix64(index_ ^ 0x6A09E667F3BCC909ULL));
  eng_.seed(h);
}

RngStream RngStream::substream(std::uint64_t k) const {
  // child key = hash chain over (index, k); the master seed is kept verbatim
  // so the whole tree is replayable from (master, path)
  const std::uint64_t child = splitmix64(index_ ^ 0xA5A5A5A55A5A5A5AULL) ^ splitmix64(k ^ 0x0F0F0F0FF0F0F0F0ULL);
  return RngStream(master_, child);
}

std::uint64_t RngStream::next_u64() { return eng_(); }

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  // Box-Muller, cosine branch only: one gaussian per (u1, u2) pair, no
  // carried state, so interleaving with other draw kinds stays reproducible
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> RngStream::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

}  // namespace rmpslab
