#pragma once
// Density matrices and the entropy functionals taken on them. States here are
// in general unnormalized (the sampled ensemble concentrates around unit norm
// but individual draws fluctuate), so purity works on any Hermitian input and
// renyi2 insists on an explicitly normalized one.

#include <vector>

#include "rmpslab/tensor.hpp"

namespace rmpslab {

struct DensityMatrix {
  std::size_t dim = 0;
  std::vector<cplx> m;  // row-major dim x dim

  // Validates: Hermitian within 1e-10 (max elementwise), trace real within 1e-10.
  DensityMatrix(std::size_t dim_, std::vector<cplx> data);

  cplx operator()(std::size_t r, std::size_t c) const { return m[r * dim + c]; }
  cplx& entry(std::size_t r, std::size_t c) { return m[r * dim + c]; }
  cplx trace() const;
};

// Trace out the sites not listed in `keep`. `local_dims` factorizes rho.dim
// site by site; `keep` is a set of site indices (any order, no duplicates).
// Output dimension ordering follows ascending site index.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& local_dims,
                            const std::vector<std::size_t>& keep);

// tr[rho^2] >= 0; valid for unnormalized rho.
double purity_of(const DensityMatrix& rho);

// S2 = -log tr[rho^2] in nats. Requires tr rho = 1 within 1e-8.
double renyi2(const DensityMatrix& rho);

}  // namespace rmpslab
