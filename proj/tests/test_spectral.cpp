#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "rmpslab/mps.hpp"  // CapExceeded
#include "rmpslab/rng.hpp"
#include "rmpslab/spectral.hpp"

using namespace rmpslab;

namespace {

SpectralHamiltonian from_eigenvalues(std::vector<double> ev) {
  SpectralHamiltonian H;
  H.eigenvalues = Eigen::Map<Eigen::VectorXd>(ev.data(), Eigen::Index(ev.size()));
  H.eigenvectors = Eigen::MatrixXcd::Identity(Eigen::Index(ev.size()), Eigen::Index(ev.size()));
  return H;
}

Eigen::VectorXcd random_state(int dim, RngStream& rng) {
  Eigen::VectorXcd psi(dim);
  for (int i = 0; i < dim; ++i) psi(i) = rng.complex_gaussian();
  psi.normalize();
  return psi;
}

Eigen::MatrixXcd random_hermitian(int dim, RngStream& rng) {
  Eigen::MatrixXcd g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = rng.complex_gaussian();
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("GUE draws: ascending non-degenerate spectrum, unitary eigenbasis") {
    RngStream rng(51, 0);
    for (const int dim : {8, 32}) {
      const SpectralHamiltonian H = sample_gue_hamiltonian(dim, rng);
      REQUIRE(H.dim() == dim);
      CHECK(H.gaps_ok);
      CHECK(H.min_gap > H.gap_tol);
      for (int j = 1; j < dim; ++j) CHECK(H.eigenvalues(j) > H.eigenvalues(j - 1));
      const double defect = (H.eigenvectors.adjoint() * H.eigenvectors -
                             Eigen::MatrixXcd::Identity(dim, dim))
                                .cwiseAbs()
                                .maxCoeff();
      CHECK(defect <= 1e-10);
    }
  }

  TEST_CASE("GUE sampling is deterministic in the stream") {
    RngStream a(52, 0), b(52, 0);
    const SpectralHamiltonian Ha = sample_gue_hamiltonian(16, a);
    const SpectralHamiltonian Hb = sample_gue_hamiltonian(16, b);
    CHECK((Ha.eigenvalues - Hb.eigenvalues).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("gap conditions: degenerate levels and degenerate gaps are flagged") {
    SpectralHamiltonian equal_levels = from_eigenvalues({0.0, 1.0, 1.0, 2.5});
    check_gap_conditions(equal_levels);
    CHECK_FALSE(equal_levels.gaps_ok);

    // arithmetic progression: all gaps equal, so gap DIFFERENCES collide
    SpectralHamiltonian equal_gaps = from_eigenvalues({0.0, 1.0, 2.0, 3.0});
    check_gap_conditions(equal_gaps);
    CHECK_FALSE(equal_gaps.gaps_ok);

    SpectralHamiltonian good = from_eigenvalues({0.0, 0.31, 1.07, 2.9});
    check_gap_conditions(good);
    CHECK(good.gaps_ok);

    SpectralHamiltonian descending = from_eigenvalues({1.0, 0.0});
    CHECK_THROWS_AS(check_gap_conditions(descending), std::invalid_argument);
  }

  TEST_CASE("effective dimension: eigenstates, uniform superpositions, validation") {
    RngStream rng(53, 0);
    const SpectralHamiltonian H = sample_gue_hamiltonian(8, rng);

    const Eigen::VectorXcd e3 = H.eigenvectors.col(3);
    CHECK(effective_dimension(e3, H) == doctest::Approx(1.0).epsilon(1e-10));

    Eigen::VectorXcd flat = Eigen::VectorXcd::Zero(8);
    for (int j = 0; j < 8; ++j) flat += H.eigenvectors.col(j);
    flat /= std::sqrt(8.0);
    CHECK(effective_dimension(flat, H) == doctest::Approx(8.0).epsilon(1e-10));

    CHECK_THROWS_AS(effective_dimension(2.0 * flat, H), std::invalid_argument);  // unnormalized
    CHECK_THROWS_AS(effective_dimension(Eigen::VectorXcd::Ones(5), H), std::invalid_argument);
  }

  TEST_CASE("closed-form time fluctuation matches a numeric time average") {
    RngStream rng(54, 0);
    const int dim = 16;
    const SpectralHamiltonian H = sample_gue_hamiltonian(dim, rng);
    const Eigen::VectorXcd psi = random_state(dim, rng);
    const Eigen::MatrixXcd A = random_hermitian(dim, rng);

    const double exact = time_fluctuation_exact(psi, H, A);

    // numeric: <A>(t) = sum_{jk} conj(c_j) c_k e^{i(E_j - E_k)t} A~_jk
    const Eigen::VectorXcd c = H.eigenvectors.adjoint() * psi;
    const Eigen::MatrixXcd At = H.eigenvectors.adjoint() * A * H.eigenvectors;
    double invariant_mean = 0.0;
    for (int j = 0; j < dim; ++j) invariant_mean += std::norm(c(j)) * At(j, j).real();

    const double T = 1000.0 / H.min_gap;
    const int NT = 100000;
    RngStream times(54, 1);
    double acc = 0.0;
    for (int s = 0; s < NT; ++s) {
      const double t = T * times.uniform();
      cplx val{0.0, 0.0};
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          val += std::conj(c(j)) * c(k) * std::polar(1.0, (H.eigenvalues(j) - H.eigenvalues(k)) * t) *
                 At(j, k);
      const double dev = val.real() - invariant_mean;
      acc += dev * dev;
    }
    const double numeric = acc / NT;
    CHECK(numeric == doctest::Approx(exact).epsilon(0.05));
  }

  TEST_CASE("per-draw fluctuation never beats the operator-norm cap") {
    RngStream rng(55, 0);
    const int dim = 12;
    const SpectralHamiltonian H = sample_gue_hamiltonian(dim, rng);
    for (int rep = 0; rep < 20; ++rep) {
      const Eigen::VectorXcd psi = random_state(dim, rng);
      const Eigen::MatrixXcd A = random_hermitian(dim, rng);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
      const double opnorm = es.eigenvalues().cwiseAbs().maxCoeff();
      const double fluct = time_fluctuation_exact(psi, H, A);
      const double deff = effective_dimension(psi, H);
      CHECK(fluct >= 0.0);
      CHECK(fluct <= opnorm * opnorm / deff + 1e-10);
    }
  }

  TEST_CASE("time fluctuation of a conserved quantity is zero") {
    RngStream rng(56, 0);
    const SpectralHamiltonian H = sample_gue_hamiltonian(10, rng);
    const Eigen::VectorXcd psi = random_state(10, rng);
    // A diagonal in the energy eigenbasis commutes with H: nothing fluctuates
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(10, 10);
    for (int j = 0; j < 10; ++j) diag(j, j) = 0.3 * j - 1.0;
    const Eigen::MatrixXcd A = H.eigenvectors * diag * H.eigenvectors.adjoint();
    CHECK(time_fluctuation_exact(psi, H, A) <= 1e-10);
  }

  TEST_CASE("dimension cap") {
    RngStream rng(57, 0);
    CHECK_THROWS_AS(sample_gue_hamiltonian(5000, rng), CapExceeded);
    CHECK_THROWS_AS(sample_gue_hamiltonian(0, rng), std::invalid_argument);
  }
}
