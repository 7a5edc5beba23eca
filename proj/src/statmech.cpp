#include "rmpslab/statmech.hpp"

#include <cmath>
#include <stdexcept>

#include "rmpslab/mps.hpp"
#include "rmpslab/weingarten.hpp"

namespace rmpslab {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

using Mat2 = TransferMatrix2;

Mat2 mul(const Mat2& a, const Mat2& b) {
  Mat2 c;
  for (int r = 0; r < 2; ++r)
    for (int col = 0; col < 2; ++col)
      c.m[r][col] = a.m[r][0] * b.m[0][col] + a.m[r][1] * b.m[1][col];
  return c;
}

double trace_o_squared(const Eigen::MatrixXcd& O) {
  return (O * O).trace().real();
}

void check_obs(const Eigen::MatrixXcd& O, int d) {
  require(O.rows() == d && O.cols() == d, "observable must be d x d");
  require((O - O.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, "observable must be Hermitian");
  const double scale = std::max(1.0, O.cwiseAbs().maxCoeff());
  require(std::abs(O.trace()) <= 1e-10 * scale, "observable must be traceless");
}

}  // namespace

double eta(double x, double y) {
  require(x * y > 1.0, "eta: requires x*y > 1");
  return (x * y * y - x) / (x * x * y * y - 1.0);
}

double alpha(int d, int D) {
  require(d >= 2 && D >= 1, "alpha: need d >= 2, D >= 1");
  const double dd = d, DD = D;
  return std::log((dd - 1.0 / (dd * DD * DD)) / ((1.0 + 1.0 / DD) * (1.0 + 1.0 / (dd * DD))));
}

TransferMatrix2 site_transfer_matrix(const SiteTag& tag, int d, int D) {
  require(d >= 2 && D >= 1, "site_transfer_matrix: need d >= 2, D >= 1");
  const double e = eta(d, D), et = eta(D, d);
  Mat2 T;
  switch (tag.kind) {
    case SiteTag::Kind::Blue:
      T.m[0][0] = e;
      T.m[0][1] = 0.0;
      T.m[1][0] = et;
      T.m[1][1] = 1.0;
      return T;
    case SiteTag::Kind::Green:
      T.m[0][0] = 1.0;
      T.m[0][1] = et;
      T.m[1][0] = 0.0;
      T.m[1][1] = e;
      return T;
    case SiteTag::Kind::Obs: {
      check_obs(tag.O, d);
      const double t = trace_o_squared(tag.O);
      const double dd = d, DD = D;
      const double denom = dd * dd * DD * DD - 1.0;
      const double off = dd * DD * (dd + 1.0) * denom;
      T.m[0][0] = -t / (dd * denom);
      T.m[0][1] = -t * (dd * dd * DD * DD * DD * DD - dd * dd * DD * DD + dd * DD * DD + 1.0) / off;
      T.m[1][0] = t * (dd * dd * DD * DD * DD * DD + dd * DD * DD - DD * DD + 1.0) / off;
      T.m[1][1] = t * DD * DD / denom;
      return T;
    }
  }
  throw std::logic_error("site_transfer_matrix: unreachable");
}

double exact_chain_value(const SpinChainPattern& pattern, int d, int D) {
  pattern.validate();
  Mat2 prod = site_transfer_matrix(pattern.sites[0], d, D);
  for (std::size_t j = 1; j < pattern.sites.size(); ++j)
    prod = mul(prod, site_transfer_matrix(pattern.sites[j], d, D));
  return prod.m[0][0] + prod.m[1][1];
}

double norm_second_moment(int d, int n, int D) {
  require(n >= 1, "norm_second_moment: n must be >= 1");
  return 1.0 + std::pow(eta(d, D), n);
}

double connected_purity_expectation(int d, int n, int D, int l) {
  require(n >= 2 && l >= 1 && l <= n - 1, "connected purity: need 1 <= l <= n-1");
  const double e = eta(d, D), et = eta(D, d);
  const double s = (1.0 - std::pow(e, l)) * (1.0 - std::pow(e, n - l)) / ((1.0 - e) * (1.0 - e));
  return std::pow(e, n - l) + std::pow(e, l) + et * et * s;
}

double disconnected_purity_expectation(int d, int n, int D, int k) {
  require(k >= 2 && n >= k && n % k == 0, "disconnected purity: need k >= 2 and k | n");
  return exact_chain_value(every_kth_green(n, k), d, D);
}

double extensivity_purity_bound(int d, int n, int D, int k) {
  require(k >= 2 && n >= k && n % k == 0, "extensivity bound: need k >= 2 and k | n");
  const double e = eta(d, D), et = eta(D, d);
  return std::pow(std::pow(e, k - 1) + et + e, n / k);
}

double overlap_fourth_moment_bound(int d, int n, int D) {
  require(d >= 2 && D >= 1 && n >= 1, "overlap bound: need d >= 2, D >= 1, n >= 1");
  const double dd = d, DD = D;
  return 2.0 * std::pow((1.0 + 1.0 / DD) * (1.0 + 1.0 / (dd * DD)), n) /
         std::pow(dd * dd - 1.0 / (DD * DD), n);
}

LocalObsMoment local_observable_second_moment(int d, int n, int D, const Eigen::MatrixXcd& O) {
  require(n >= 2, "local observable moment: need n >= 2");
  check_obs(O, d);
  LocalObsMoment out;
  out.exact = exact_chain_value(single_obs(n, O), d, D);
  out.bound = 2.0 * trace_o_squared(O) / (static_cast<double>(D) * D);
  return out;
}

double local_observable_second_moment_closed_form(int d, int n, int D, double trace_o_sq) {
  require(n >= 2, "local observable closed form: need n >= 2");
  require(trace_o_sq >= 0.0, "local observable closed form: tr[O^2] must be >= 0");
  const double dd = d, DD = D;
  const double tail = std::pow(eta(d, D), n - 1) * dd * DD * DD * (DD * DD - 1.0) /
                      (dd * dd * DD * DD - 1.0);
  return trace_o_sq / (dd * DD * DD + 1.0) * (1.0 / dd + tail);
}

double markov_tail(double expectation_upper_bound, double threshold) {
  require(expectation_upper_bound > 0.0 && threshold > 0.0,
          "markov_tail: arguments must be positive");
  return std::min(1.0, expectation_upper_bound / threshold);
}

double frame_potential_2(int d, int n, int D) {
  const double D8 = std::pow(static_cast<double>(D), 8);
  if (D8 <= 4096.0) return state_fourth_overlap_trace(d, n, D);
  // fall back to the explicit moment matrix; tr[M^2] = ||M||_F^2 (M Hermitian)
  const Eigen::MatrixXcd M = state_second_moment_matrix(d, n, D);
  return M.squaredNorm();
}

double frame_potential_2_normalized(int d, int n, int D) {
  const double tau = norm_second_moment(d, n, D);
  return frame_potential_2(d, n, D) / (tau * tau);
}

double design_distance_sq(int d, int n, int D) {
  const Eigen::MatrixXcd M = state_second_moment_matrix(d, n, D);
  const std::size_t dim = static_cast<std::size_t>(M.rows());  // d^n copies: dim = (d^n)^2
  std::size_t q = 1;
  while (q * q < dim) ++q;  // q = d^n
  const double g = 2.0 / (static_cast<double>(q) * (q + 1.0));

  // || M - 2 P_sym / (q(q+1)) ||_F^2, streaming the projector's entries
  // (x1 x2 | y1 y2): (delta_{x1 y1} delta_{x2 y2} + delta_{x1 y2} delta_{x2 y1}) / 2
  double acc = 0.0;
  for (std::size_t row = 0; row < dim; ++row) {
    const std::size_t x1 = row / q, x2 = row % q;
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t y1 = col / q, y2 = col % q;
      double gval = 0.0;
      if (x1 == y1 && x2 == y2) gval += 0.5 * g;
      if (x1 == y2 && x2 == y1) gval += 0.5 * g;
      acc += std::norm(M(row, col) - gval);
    }
  }
  return acc;
}

double frame_potential_haar_floor(int d, int n) {
  const double q = std::pow(static_cast<double>(d), n);
  return 2.0 / (q * (q + 1.0));
}

double design_distance_exclusion(int d, int n, int D) {
  require(n >= 2 && n % 2 == 0, "design distance exclusion: need even n");
  const double qn = std::pow(static_cast<double>(d), n);
  const double half = std::pow(static_cast<double>(d), n / 2);
  return (1.0 / D - 2.0 * half / (qn + 1.0)) / qn;
}

}  // namespace rmpslab
