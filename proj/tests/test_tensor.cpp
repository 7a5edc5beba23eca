#include <doctest.h>

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "rmpslab/rng.hpp"
#include "rmpslab/tensor.hpp"

using namespace rmpslab;

namespace {

DenseTensor random_tensor(const std::vector<std::size_t>& shape, RngStream& rng) {
  DenseTensor t(shape);
  for (cplx& v : t.data) v = rng.complex_gaussian();
  return t;
}

// Reference contraction: plain nested loops over every index assignment.
DenseTensor contract_reference(const DenseTensor& a, const DenseTensor& b,
                               const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<bool> a_bound(a.rank(), false), b_bound(b.rank(), false);
  for (const auto& [ai, bi] : pairs) {
    a_bound[ai] = true;
    b_bound[bi] = true;
  }
  std::vector<std::size_t> out_shape;
  for (std::size_t i = 0; i < a.rank(); ++i)
    if (!a_bound[i]) out_shape.push_back(a.shape[i]);
  for (std::size_t i = 0; i < b.rank(); ++i)
    if (!b_bound[i]) out_shape.push_back(b.shape[i]);
  DenseTensor out(out_shape);

  std::vector<std::size_t> ai(a.rank(), 0), bi(b.rank(), 0);
  const std::function<void(std::size_t, std::vector<std::size_t>&, const DenseTensor&,
                           const std::function<void()>&)>
      loop = [&](std::size_t axis, std::vector<std::size_t>& idx, const DenseTensor& t,
                 const std::function<void()>& body) {
        if (axis == t.rank()) {
          body();
          return;
        }
        for (std::size_t v = 0; v < t.shape[axis]; ++v) {
          idx[axis] = v;
          loop(axis + 1, idx, t, body);
        }
      };

  loop(0, ai, a, [&] {
    loop(0, bi, b, [&] {
      for (const auto& [x, y] : pairs)
        if (ai[x] != bi[y]) return;
      std::vector<std::size_t> oi;
      for (std::size_t i = 0; i < a.rank(); ++i)
        if (!a_bound[i]) oi.push_back(ai[i]);
      for (std::size_t i = 0; i < b.rank(); ++i)
        if (!b_bound[i]) oi.push_back(bi[i]);
      out.at(oi) += a.at(ai) * b.at(bi);
    });
  });
  return out;
}

double max_diff(const DenseTensor& a, const DenseTensor& b) {
  REQUIRE(a.shape == b.shape);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("scalar and identity constructors") {
    const DenseTensor s = DenseTensor::scalar({2.0, -1.0});
    CHECK(s.rank() == 0);
    CHECK(s.size() == 1);
    CHECK(s.data[0] == cplx{2.0, -1.0});

    const DenseTensor id = DenseTensor::identity(3);
    CHECK(id.shape == std::vector<std::size_t>{3, 3});
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        CHECK(id.at({r, c}) == (r == c ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
  }

  TEST_CASE("at() addresses row-major storage") {
    DenseTensor t({2, 3, 4});
    REQUIRE(t.size() == 24);
    t.at({1, 2, 3}) = cplx{7.0, 0.0};
    CHECK(t.data[1 * 12 + 2 * 4 + 3] == cplx{7.0, 0.0});
    t.at({0, 1, 0}) = cplx{0.0, 5.0};
    CHECK(t.data[4] == cplx{0.0, 5.0});
  }

  TEST_CASE("matrix product agrees with Eigen") {
    RngStream rng(11, 0);
    for (int rep = 0; rep < 5; ++rep) {
      const DenseTensor a = random_tensor({4, 6}, rng);
      const DenseTensor b = random_tensor({6, 3}, rng);
      const DenseTensor c = contract(a, b, {{1, 0}});
      REQUIRE(c.shape == std::vector<std::size_t>{4, 3});

      Eigen::MatrixXcd ma(4, 6), mb(6, 3);
      for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 6; ++col) ma(r, col) = a.at({std::size_t(r), std::size_t(col)});
      for (int r = 0; r < 6; ++r)
        for (int col = 0; col < 3; ++col) mb(r, col) = b.at({std::size_t(r), std::size_t(col)});
      const Eigen::MatrixXcd mc = ma * mb;
      for (int r = 0; r < 4; ++r)
        for (int col = 0; col < 3; ++col)
          CHECK(std::abs(c.at({std::size_t(r), std::size_t(col)}) - mc(r, col)) <= 1e-12);
    }
  }

  TEST_CASE("general contractions agree with the nested-loop reference") {
    RngStream rng(12, 0);
    SUBCASE("rank-3 x rank-3 over two axis pairs") {
      const DenseTensor a = random_tensor({2, 3, 4}, rng);
      const DenseTensor b = random_tensor({4, 2, 5}, rng);
      const DenseTensor got = contract(a, b, {{2, 0}, {0, 1}});
      const DenseTensor want = contract_reference(a, b, {{2, 0}, {0, 1}});
      CHECK(max_diff(got, want) <= 1e-12);
    }
    SUBCASE("outer product (no pairs)") {
      const DenseTensor a = random_tensor({2, 2}, rng);
      const DenseTensor b = random_tensor({3}, rng);
      const DenseTensor got = contract(a, b, {});
      const DenseTensor want = contract_reference(a, b, {});
      CHECK(got.shape == std::vector<std::size_t>{2, 2, 3});
      CHECK(max_diff(got, want) <= 1e-12);
    }
    SUBCASE("full contraction to a scalar") {
      const DenseTensor a = random_tensor({3, 4}, rng);
      const DenseTensor b = random_tensor({3, 4}, rng);
      const DenseTensor got = contract(a, b, {{0, 0}, {1, 1}});
      const DenseTensor want = contract_reference(a, b, {{0, 0}, {1, 1}});
      CHECK(got.rank() == 0);
      CHECK(std::abs(got.data[0] - want.data[0]) <= 1e-12);
    }
  }

  TEST_CASE("contraction never beats the Cauchy-Schwarz norm budget") {
    // |A . B|_F <= |A|_F |B|_F for every pairing; checked over random
    // chains of 2-4 tensors with random contractions between neighbours.
    RngStream rng(13, 0);
    for (int rep = 0; rep < 100; ++rep) {
      const int chain = 2 + static_cast<int>(rng.next_u64() % 3);
      DenseTensor acc = random_tensor({2, 3, 2}, rng);
      double budget = acc.frobenius_norm();
      for (int t = 1; t < chain; ++t) {
        const DenseTensor next = random_tensor({2, 3, 2}, rng);
        // contract acc's last axis of dim 2 with next's first axis of dim 2
        const std::size_t last = acc.rank() - 1;
        acc = contract(acc, next, {{last, 0}});
        budget *= next.frobenius_norm();
        REQUIRE(acc.frobenius_norm() <= budget * (1.0 + 1e-12));
      }
    }
  }

  TEST_CASE("transpose reorders axes and round-trips") {
    RngStream rng(14, 0);
    const DenseTensor a = random_tensor({2, 3, 4}, rng);
    const DenseTensor t = transpose(a, {2, 0, 1});
    REQUIRE(t.shape == std::vector<std::size_t>{4, 2, 3});
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 4; ++k) CHECK(t.at({k, i, j}) == a.at({i, j, k}));

    // applying the inverse permutation restores the original tensor
    const DenseTensor back = transpose(t, {1, 2, 0});
    CHECK(back.shape == a.shape);
    CHECK(max_diff(back, a) == 0.0);
  }

  TEST_CASE("invalid arguments are rejected") {
    const DenseTensor a({2, 3});
    const DenseTensor b({4, 2});
    CHECK_THROWS_AS(contract(a, b, {{1, 1}}), std::invalid_argument);   // 3 vs 2
    CHECK_THROWS_AS(contract(a, b, {{0, 1}, {0, 0}}), std::invalid_argument);  // axis reused
    CHECK_THROWS_AS(contract(a, b, {{5, 0}}), std::invalid_argument);   // out of range
    CHECK_THROWS_AS(transpose(a, {0}), std::invalid_argument);          // wrong perm size
    CHECK_THROWS_AS(transpose(a, {0, 0}), std::invalid_argument);       // not a permutation
    CHECK_THROWS_AS(DenseTensor({2, 0, 3}), std::invalid_argument);     // zero extent
  }

  TEST_CASE("frobenius norm matches the definition") {
    DenseTensor t({2, 2});
    t.at({0, 0}) = {3.0, 0.0};
    t.at({1, 1}) = {0.0, 4.0};
    CHECK(t.frobenius_norm() == doctest::Approx(5.0).epsilon(1e-14));
  }
}
