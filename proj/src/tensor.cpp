#include "rmpslab/tensor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rmpslab {

namespace {

std::vector<std::size_t> row_major_strides(const std::vector<std::size_t>& shape) {
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t i = shape.size(); i-- > 1;) strides[i - 1] = strides[i] * shape[i];
  return strides;
}

using MatrixXc =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t p = 1;
  for (std::size_t s : shape) {
    if (s == 0) throw std::invalid_argument("tensor axis of extent 0");
    if (p > std::size_t(-1) / s) throw std::invalid_argument("tensor size overflow");
    p *= s;
  }
  return p;
}

DenseTensor::DenseTensor(std::vector<std::size_t> s)
    : shape(std::move(s)), data(shape_product(shape), cplx{0.0, 0.0}) {}

DenseTensor DenseTensor::scalar(cplx v) {
  DenseTensor t;
  t.data[0] = v;
  return t;
}

DenseTensor DenseTensor::identity(std::size_t dim) {
  DenseTensor t({dim, dim});
  for (std::size_t i = 0; i < dim; ++i) t.data[i * dim + i] = cplx{1.0, 0.0};
  return t;
}

cplx& DenseTensor::at(const std::vector<std::size_t>& idx) {
  return const_cast<cplx&>(std::as_const(*this).at(idx));
}

const cplx& DenseTensor::at(const std::vector<std::size_t>& idx) const {
  if (idx.size() != shape.size()) throw std::invalid_argument("index rank mismatch");
  std::size_t off = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] >= shape[a]) throw std::out_of_range("tensor index out of range");
    off = off * shape[a] + idx[a];
  }
  return data[off];
}

double DenseTensor::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : data) s += std::norm(v);
  return std::sqrt(s);
}

DenseTensor transpose(const DenseTensor& a, const std::vector<std::size_t>& perm) {
  if (perm.size() != a.rank()) throw std::invalid_argument("transpose: permutation rank mismatch");
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) throw std::invalid_argument("transpose: not a permutation");
    seen[p] = true;
  }

  std::vector<std::size_t> out_shape(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out_shape[i] = a.shape[perm[i]];
  DenseTensor out(out_shape);

  const std::vector<std::size_t> in_strides = row_major_strides(a.shape);
  // stride of output axis i in the INPUT buffer
  std::vector<std::size_t> gather(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) gather[i] = in_strides[perm[i]];

  std::vector<std::size_t> idx(perm.size(), 0);
  std::size_t src = 0;
  for (std::size_t dst = 0; dst < out.size(); ++dst) {
    out.data[dst] = a.data[src];
    for (std::size_t ax = perm.size(); ax-- > 0;) {
      if (++idx[ax] < out_shape[ax]) {
        src += gather[ax];
        break;
      }
      idx[ax] = 0;
      src -= gather[ax] * (out_shape[ax] - 1);
    }
  }
  return out;
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<bool> a_used(a.rank(), false), b_used(b.rank(), false);
  for (const auto& [pa, pb] : pairs) {
    if (pa >= a.rank() || pb >= b.rank()) throw std::invalid_argument("contract: axis out of range");
    if (a_used[pa] || b_used[pb]) throw std::invalid_argument("contract: axis paired twice");
    if (a.shape[pa] != b.shape[pb]) throw std::invalid_argument("contract: paired axis extents differ");
    a_used[pa] = true;
    b_used[pb] = true;
  }

  std::vector<std::size_t> a_free, b_free, a_con, b_con;
  for (std::size_t i = 0; i < a.rank(); ++i) (a_used[i] ? a_con : a_free).push_back(i);
  // keep contracted axes in pair order so both operands agree on it
  a_con.clear();
  for (const auto& p : pairs) a_con.push_back(p.first);
  for (const auto& p : pairs) b_con.push_back(p.second);
  for (std::size_t i = 0; i < b.rank(); ++i)
    if (!b_used[i]) b_free.push_back(i);

  std::vector<std::size_t> a_perm = a_free, b_perm = b_con;
  a_perm.insert(a_perm.end(), a_con.begin(), a_con.end());
  b_perm.insert(b_perm.end(), b_free.begin(), b_free.end());

  const DenseTensor ta = transpose(a, a_perm);
  const DenseTensor tb = transpose(b, b_perm);

  std::size_t rows = 1, inner = 1, cols = 1;
  std::vector<std::size_t> out_shape;
  for (std::size_t ax : a_free) {
    rows *= a.shape[ax];
    out_shape.push_back(a.shape[ax]);
  }
  for (std::size_t ax : a_con) inner *= a.shape[ax];
  for (std::size_t ax : b_free) {
    cols *= b.shape[ax];
    out_shape.push_back(b.shape[ax]);
  }

  DenseTensor out(out_shape);
  Eigen::Map<const MatrixXc> ma(ta.data.data(), rows, inner);
  Eigen::Map<const MatrixXc> mb(tb.data.data(), inner, cols);
  Eigen::Map<MatrixXc> mo(out.data.data(), rows, cols);
  mo.noalias() = ma * mb;
  return out;
}

}  // namespace rmpslab
