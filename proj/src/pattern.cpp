#include "rmpslab/pattern.hpp"

#include <stdexcept>

namespace rmpslab {

namespace {

void check_hermitian(const Eigen::MatrixXcd& O) {
  if (O.rows() < 2 || O.rows() != O.cols())
    throw std::invalid_argument("observable tag: O must be square with dim >= 2");
  if ((O - O.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("observable tag: O must be Hermitian");
}

}  // namespace

SiteTag SiteTag::obs(const Eigen::MatrixXcd& O) {
  check_hermitian(O);
  return {Kind::Obs, O};
}

void SpinChainPattern::validate() const {
  if (sites.empty()) throw std::invalid_argument("pattern: needs at least one site");
  for (const SiteTag& t : sites)
    if (t.kind == SiteTag::Kind::Obs) check_hermitian(t.O);
}

SpinChainPattern all_blue(int n) {
  if (n < 1) throw std::invalid_argument("pattern: n must be >= 1");
  return {std::vector<SiteTag>(n, SiteTag::blue())};
}

SpinChainPattern green_block(int n, int l, int start) {
  if (n < 1) throw std::invalid_argument("pattern: n must be >= 1");
  if (l < 0 || l > n) throw std::invalid_argument("pattern: block length must be in [0, n]");
  SpinChainPattern p = all_blue(n);
  for (int j = 0; j < l; ++j) p.sites[((start + j) % n + n) % n] = SiteTag::green();
  return p;
}

SpinChainPattern every_kth_green(int n, int k) {
  if (n < 1) throw std::invalid_argument("pattern: n must be >= 1");
  if (k < 1 || n % k != 0) throw std::invalid_argument("pattern: k must divide n");
  SpinChainPattern p = all_blue(n);
  for (int j = k - 1; j < n; j += k) p.sites[j] = SiteTag::green();
  return p;
}

SpinChainPattern single_obs(int n, const Eigen::MatrixXcd& O, int site) {
  if (n < 1) throw std::invalid_argument("pattern: n must be >= 1");
  if (site < 0 || site >= n) throw std::invalid_argument("pattern: obs site out of range");
  SpinChainPattern p = all_blue(n);
  p.sites[site] = SiteTag::obs(O);
  return p;
}

Eigen::MatrixXcd pauli_z_embedded(int d) {
  if (d < 2) throw std::invalid_argument("pauli_z_embedded: d must be >= 2");
  Eigen::MatrixXcd O = Eigen::MatrixXcd::Zero(d, d);
  O(0, 0) = 1.0;
  O(1, 1) = -1.0;
  return O;
}

std::string pattern_string(const SpinChainPattern& p) {
  std::string s;
  s.reserve(p.sites.size());
  for (const SiteTag& t : p.sites) {
    switch (t.kind) {
      case SiteTag::Kind::Blue: s += 'B'; break;
      case SiteTag::Kind::Green: s += 'G'; break;
      case SiteTag::Kind::Obs: s += 'O'; break;
    }
  }
  return s;
}

}  // namespace rmpslab
