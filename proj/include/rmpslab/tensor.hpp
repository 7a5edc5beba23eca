#pragma once
// Dense complex tensors in row-major layout, plus the explicit contraction
// primitive every other module builds on. Axis bookkeeping is always explicit:
// no broadcasting, no implicit reordering, so oracle values are reproducible
// bit for bit.

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace rmpslab {

using cplx = std::complex<double>;

struct DenseTensor {
  std::vector<std::size_t> shape;  // empty shape = rank-0 scalar
  std::vector<cplx> data;          // row-major; size == product(shape)

  DenseTensor() : data(1, cplx{0.0, 0.0}) {}
  explicit DenseTensor(std::vector<std::size_t> s);

  static DenseTensor scalar(cplx v);
  static DenseTensor identity(std::size_t dim);

  std::size_t rank() const { return shape.size(); }
  std::size_t size() const { return data.size(); }

  cplx& at(const std::vector<std::size_t>& idx);
  const cplx& at(const std::vector<std::size_t>& idx) const;

  double frobenius_norm() const;
};

std::size_t shape_product(const std::vector<std::size_t>& shape);

// Contract `a` with `b` over the given (axis-of-a, axis-of-b) pairs.
// Result axes: free axes of a in their original order, then free axes of b.
// Paired axes must have equal dimensions and no axis may appear twice.
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

// Reorder axes: result axis i is input axis perm[i].
DenseTensor transpose(const DenseTensor& a, const std::vector<std::size_t>& perm);

}  // namespace rmpslab
