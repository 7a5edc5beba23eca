#include "rmpslab/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmpslab {

DensityMatrix::DensityMatrix(std::size_t dim_, std::vector<cplx> data)
    : dim(dim_), m(std::move(data)) {
  if (dim == 0 || m.size() != dim * dim)
    throw std::invalid_argument("density matrix: data size must be dim^2");
  double herm_defect = 0.0;
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = r; c < dim; ++c)
      herm_defect = std::max(herm_defect, std::abs(m[r * dim + c] - std::conj(m[c * dim + r])));
  if (herm_defect > 1e-10) throw std::invalid_argument("density matrix: not Hermitian");
  if (std::abs(trace().imag()) > 1e-10)
    throw std::invalid_argument("density matrix: trace not real");
}

cplx DensityMatrix::trace() const {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < dim; ++i) t += m[i * dim + i];
  return t;
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<std::size_t>& local_dims,
                            const std::vector<std::size_t>& keep) {
  std::size_t total = 1;
  for (std::size_t d : local_dims) total *= d;
  if (total != rho.dim) throw std::invalid_argument("partial_trace: local_dims do not factor dim");
  std::vector<bool> kept(local_dims.size(), false);
  for (std::size_t s : keep) {
    if (s >= local_dims.size()) throw std::invalid_argument("partial_trace: site out of range");
    if (kept[s]) throw std::invalid_argument("partial_trace: duplicate site");
    kept[s] = true;
  }

  std::vector<std::size_t> strides(local_dims.size(), 1);
  for (std::size_t i = local_dims.size(); i-- > 1;) strides[i - 1] = strides[i] * local_dims[i];

  std::vector<std::size_t> keep_sites, env_sites;
  for (std::size_t s = 0; s < local_dims.size(); ++s) (kept[s] ? keep_sites : env_sites).push_back(s);

  std::size_t keep_dim = 1, env_dim = 1;
  for (std::size_t s : keep_sites) keep_dim *= local_dims[s];
  for (std::size_t s : env_sites) env_dim *= local_dims[s];

  // offset of a flat kept/env configuration inside the full index
  auto expand = [&](std::size_t flat, const std::vector<std::size_t>& sites) {
    std::size_t off = 0;
    for (std::size_t i = sites.size(); i-- > 0;) {
      std::size_t s = sites[i];
      off += (flat % local_dims[s]) * strides[s];
      flat /= local_dims[s];
    }
    return off;
  };

  std::vector<std::size_t> keep_off(keep_dim), env_off(env_dim);
  for (std::size_t k = 0; k < keep_dim; ++k) keep_off[k] = expand(k, keep_sites);
  for (std::size_t e = 0; e < env_dim; ++e) env_off[e] = expand(e, env_sites);

  std::vector<cplx> out(keep_dim * keep_dim, cplx{0.0, 0.0});
  for (std::size_t e = 0; e < env_dim; ++e)
    for (std::size_t r = 0; r < keep_dim; ++r) {
      const std::size_t row = keep_off[r] + env_off[e];
      for (std::size_t c = 0; c < keep_dim; ++c)
        out[r * keep_dim + c] += rho.m[row * rho.dim + keep_off[c] + env_off[e]];
    }
  return DensityMatrix(keep_dim, std::move(out));
}

double purity_of(const DensityMatrix& rho) {
  // tr[rho^2] = ||rho||_F^2 for Hermitian rho
  double s = 0.0;
  for (const cplx& v : rho.m) s += std::norm(v);
  return s;
}

double renyi2(const DensityMatrix& rho) {
  if (std::abs(rho.trace() - cplx{1.0, 0.0}) > 1e-8)
    throw std::invalid_argument("renyi2: state must be normalized");
  return -std::log(purity_of(rho));
}

}  // namespace rmpslab
