#include "rmpslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rmpslab/mps.hpp"

namespace rmpslab {

void check_gap_conditions(SpectralHamiltonian& H) {
  const int dim = H.dim();
  if (dim < 2) throw std::invalid_argument("gap check: need dim >= 2");
  for (int j = 1; j < dim; ++j)
    if (!(H.eigenvalues(j) >= H.eigenvalues(j - 1)))
      throw std::invalid_argument("gap check: eigenvalues must be ascending");

  const double range = H.eigenvalues(dim - 1) - H.eigenvalues(0);
  H.gap_tol = 1e-9 * range;
  H.gaps_ok = range > 0.0;

  std::vector<double> gaps(dim - 1);
  for (int j = 0; j < dim - 1; ++j) gaps[j] = H.eigenvalues(j + 1) - H.eigenvalues(j);
  H.min_gap = *std::min_element(gaps.begin(), gaps.end());
  if (H.min_gap <= H.gap_tol) H.gaps_ok = false;

  // non-degenerate gaps: no two level spacings coincide either (checked on
  // the sorted spacing list; a necessary condition for the closed-form
  // infinite-time average, and the one that is affordable at dim 4096)
  std::sort(gaps.begin(), gaps.end());
  for (std::size_t j = 1; j < gaps.size(); ++j)
    if (gaps[j] - gaps[j - 1] <= H.gap_tol) {
      H.gaps_ok = false;
      break;
    }
}

SpectralHamiltonian sample_gue_hamiltonian(int dim, RngStream& rng) {
  if (dim < 2) throw std::invalid_argument("sample_gue_hamiltonian: dim must be >= 2");
  if (dim > 4096) throw CapExceeded("sample_gue_hamiltonian: dim exceeds cap 4096");

  for (int attempt = 0; attempt < 10; ++attempt) {
    Eigen::MatrixXcd g(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) g(r, c) = rng.complex_gaussian();
    const Eigen::MatrixXcd h = (g + g.adjoint()) / 2.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    SpectralHamiltonian H;
    H.eigenvalues = solver.eigenvalues();
    H.eigenvectors = solver.eigenvectors();
    check_gap_conditions(H);
    if (H.gaps_ok) return H;
  }
  throw std::runtime_error("sample_gue_hamiltonian: gap condition failed 10 times");
}

double effective_dimension(const Eigen::VectorXcd& psi, const SpectralHamiltonian& H) {
  if (psi.size() != H.dim()) throw std::invalid_argument("effective_dimension: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("effective_dimension: psi must be normalized");
  const Eigen::VectorXcd c = H.eigenvectors.adjoint() * psi;
  double ipr = 0.0;
  for (int j = 0; j < c.size(); ++j) {
    const double p = std::norm(c(j));
    ipr += p * p;
  }
  return 1.0 / ipr;
}

double time_fluctuation_exact(const Eigen::VectorXcd& psi, const SpectralHamiltonian& H,
                              const Eigen::MatrixXcd& A) {
  if (!H.gaps_ok) throw std::invalid_argument("time_fluctuation_exact: gap condition not satisfied");
  if (psi.size() != H.dim() || A.rows() != H.dim() || A.cols() != H.dim())
    throw std::invalid_argument("time_fluctuation_exact: dimension mismatch");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("time_fluctuation_exact: psi must be normalized");

  const Eigen::VectorXcd c = H.eigenvectors.adjoint() * psi;
  const Eigen::MatrixXcd At = H.eigenvectors.adjoint() * A * H.eigenvectors;
  Eigen::VectorXd p(c.size());
  for (int j = 0; j < c.size(); ++j) p(j) = std::norm(c(j));

  // sum_{j != k} p_j p_k |At_jk|^2 = p^T |At|^2 p - sum_j p_j^2 |At_jj|^2
  double full = 0.0, diag = 0.0;
  for (int j = 0; j < c.size(); ++j) {
    for (int k = 0; k < c.size(); ++k) full += p(j) * p(k) * std::norm(At(j, k));
    diag += p(j) * p(j) * std::norm(At(j, j));
  }
  return full - diag;
}

}  // namespace rmpslab
