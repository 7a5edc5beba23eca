#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rmpslab/haar.hpp"
#include "rmpslab/rng.hpp"
#include "rmpslab/tensor.hpp"

using namespace rmpslab;

namespace {

// One-sample KS statistic against the uniform CDF on [0, 1).
double ks_uniform(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d = std::max(d, std::abs((i + 1) / n - xs[i]));
    d = std::max(d, std::abs(xs[i] - i / n));
  }
  return d;
}

// Two-sample KS statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

}  // namespace

TEST_SUITE("rng_haar") {
  TEST_CASE("streams are reproducible and keyed by the full path") {
    RngStream a(123, 7);
    RngStream b(123, 7);
    for (int i = 0; i < 64; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(123, 8);       // different stream index
    RngStream d(124, 7);       // different master seed
    RngStream fresh(123, 7);
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 64; ++i) {
      const std::uint64_t r = fresh.next_u64();
      differs_c = differs_c || (c.next_u64() != r);
      differs_d = differs_d || (d.next_u64() != r);
    }
    CHECK(differs_c);
    CHECK(differs_d);
  }

  TEST_CASE("substreams are reproducible and pairwise distinct") {
    const RngStream root(55, 0);
    RngStream s0 = root.substream(0);
    RngStream s0_again = root.substream(0);
    RngStream s1 = root.substream(1);
    bool same = true, distinct = false;
    for (int i = 0; i < 64; ++i) {
      const std::uint64_t r = s0.next_u64();
      same = same && (s0_again.next_u64() == r);
      distinct = distinct || (s1.next_u64() != r);
    }
    CHECK(same);
    CHECK(distinct);

    // drawing from a parent does not perturb (already-created) children keys
    RngStream root2_a(55, 0);
    (void)root2_a.next_u64();
    RngStream after = root2_a.substream(3);
    RngStream before = RngStream(55, 0).substream(3);
    for (int i = 0; i < 16; ++i) CHECK(after.next_u64() == before.next_u64());
  }

  TEST_CASE("uniform stays in [0,1) and is KS-uniform") {
    RngStream rng(77, 0);
    std::vector<double> xs(4000);
    for (double& x : xs) {
      x = rng.uniform();
      REQUIRE(x >= 0.0);
      REQUIRE(x < 1.0);
    }
    const double crit = 1.628 / std::sqrt(double(xs.size()));  // alpha = 0.01
    CHECK(ks_uniform(xs) < crit);
  }

  TEST_CASE("gaussian and complex gaussian match their first two moments") {
    RngStream rng(78, 0);
    const int N = 100000;
    double sum = 0.0, sumsq = 0.0, csum = 0.0;
    for (int i = 0; i < N; ++i) {
      const double g = rng.gaussian();
      sum += g;
      sumsq += g * g;
      csum += std::norm(rng.complex_gaussian());
    }
    CHECK(std::abs(sum / N) < 0.02);          // ~6 sigma of 1/sqrt(N)
    CHECK(std::abs(sumsq / N - 1.0) < 0.03);  // var(g^2) = 2
    CHECK(std::abs(csum / N - 1.0) < 0.02);   // E|z|^2 = 1
  }

  TEST_CASE("sampled unitaries are unitary") {
    RngStream rng(79, 0);
    for (const int q : {1, 2, 3, 5, 8}) {
      const Eigen::MatrixXcd U = sample_haar_unitary(q, rng);
      REQUIRE(U.rows() == q);
      const double defect = (U.adjoint() * U - Eigen::MatrixXcd::Identity(q, q)).cwiseAbs().maxCoeff();
      CHECK(defect <= 1e-12);
    }
  }

  TEST_CASE("q=1 sample is a uniform phase") {
    // A 1x1 Haar unitary is e^{i theta} with theta uniform; this is exactly
    // the gauge the R-diagonal phase correction must get right.
    RngStream rng(80, 0);
    std::vector<double> theta(3000);
    for (double& t : theta) {
      const cplx u = sample_haar_unitary(1, rng)(0, 0);
      CHECK(std::abs(std::abs(u) - 1.0) <= 1e-12);
      t = (std::arg(u) + std::numbers::pi) / (2.0 * std::numbers::pi);
    }
    const double crit = 1.628 / std::sqrt(double(theta.size()));
    CHECK(ks_uniform(theta) < crit);
  }

  TEST_CASE("left invariance: tr[VU] is distributed like tr[U]") {
    RngStream rng(81, 0);
    const int q = 3, N = 3000;
    // fixed unitary from an independent stream
    RngStream vstream(81, 999);
    const Eigen::MatrixXcd V = sample_haar_unitary(q, vstream);
    std::vector<double> plain(N), rotated(N);
    for (int i = 0; i < N; ++i) {
      const Eigen::MatrixXcd U = sample_haar_unitary(q, rng);
      plain[i] = U.trace().real();
      const Eigen::MatrixXcd U2 = sample_haar_unitary(q, rng);
      rotated[i] = (V * U2).trace().real();
    }
    const double crit = 1.628 * std::sqrt(2.0 / N);  // n = m = N, alpha = 0.01
    CHECK(ks_two_sample(plain, rotated) < crit);
  }

  TEST_CASE("matrix-element moments match the exact Haar values") {
    // E|U00|^2 = 1/q, E|U00|^4 = 2/(q(q+1))
    RngStream rng(82, 0);
    const int N = 20000;
    for (const int q : {2, 3, 4}) {
      double m2 = 0.0, m4 = 0.0;
      for (int i = 0; i < N; ++i) {
        const double a2 = std::norm(sample_haar_unitary(q, rng)(0, 0));
        m2 += a2;
        m4 += a2 * a2;
      }
      m2 /= N;
      m4 /= N;
      CHECK(m2 == doctest::Approx(1.0 / q).epsilon(0.05));
      CHECK(m4 == doctest::Approx(2.0 / (double(q) * (q + 1))).epsilon(0.10));
    }
  }

  TEST_CASE("invalid dimension is rejected") {
    RngStream rng(83, 0);
    CHECK_THROWS_AS(sample_haar_unitary(0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_haar_unitary(-2, rng), std::invalid_argument);
  }
}
