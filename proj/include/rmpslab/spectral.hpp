#pragma once
// Hamiltonians with non-degenerate spectra AND non-degenerate spectral gaps
// (both required for the closed-form infinite-time fluctuation average), plus
// the effective-dimension and fluctuation functionals taken against them.

#include <Eigen/Dense>

#include "rmpslab/rng.hpp"

namespace rmpslab {

struct SpectralHamiltonian {
  Eigen::VectorXd eigenvalues;    // strictly ascending
  Eigen::MatrixXcd eigenvectors;  // unitary, columns are |j>
  double gap_tol = 0.0;           // 1e-9 * spectral range
  double min_gap = 0.0;
  bool gaps_ok = false;           // all pairwise gap DIFFERENCES > gap_tol too

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// GUE draw, diagonalized and gap-checked; resamples up to 10 times (a GUE
// spectrum fails the check with probability ~ 0). dim <= 4096.
SpectralHamiltonian sample_gue_hamiltonian(int dim, RngStream& rng);

// Runs the invariant checks on an externally supplied spectrum.
void check_gap_conditions(SpectralHamiltonian& H);

// D_eff = 1 / sum_j |<j|psi>|^4 for normalized psi (within 1e-8).
double effective_dimension(const Eigen::VectorXcd& psi, const SpectralHamiltonian& H);

// Infinite-time average of |<psi|A(t)|psi> - running mean|^2 in closed form:
// sum_{j != k} |c_j|^2 |c_k|^2 |A_jk|^2, valid under the gap conditions.
double time_fluctuation_exact(const Eigen::VectorXcd& psi, const SpectralHamiltonian& H,
                              const Eigen::MatrixXcd& A);

}  // namespace rmpslab
