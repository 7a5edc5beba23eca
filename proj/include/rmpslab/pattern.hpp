#pragma once
// Site colorings for second-moment chains. Each site of the ring carries a
// tag saying which functional the doubled-and-conjugated copies compute
// there: Blue pairs the copies as in a plain norm, Green swaps them (a purity
// insertion), Obs weighs them with a Hermitian observable.

#include <Eigen/Dense>
#include <vector>

namespace rmpslab {

struct SiteTag {
  enum class Kind { Blue, Green, Obs };
  Kind kind = Kind::Blue;
  Eigen::MatrixXcd O;  // Obs only: Hermitian d x d

  static SiteTag blue() { return {Kind::Blue, {}}; }
  static SiteTag green() { return {Kind::Green, {}}; }
  static SiteTag obs(const Eigen::MatrixXcd& O);
};

struct SpinChainPattern {
  std::vector<SiteTag> sites;  // closure is periodic (ring trace)

  void validate() const;  // at least one site; Obs tags Hermitian
  int n() const { return static_cast<int>(sites.size()); }
};

SpinChainPattern all_blue(int n);
// l consecutive Green sites starting at `start` (ring positions mod n).
SpinChainPattern green_block(int n, int l, int start = 0);
// Green at sites k-1, 2k-1, ... (the ring reads B^{k-1} G repeated when k | n).
SpinChainPattern every_kth_green(int n, int k);
SpinChainPattern single_obs(int n, const Eigen::MatrixXcd& O, int site = 0);

// diag(1, -1, 0, ..., 0): traceless Hermitian with tr O^2 = 2 for every d >= 2.
Eigen::MatrixXcd pauli_z_embedded(int d);

// Compact text form, one char per site: 'B', 'G', 'O'.
std::string pattern_string(const SpinChainPattern& p);

}  // namespace rmpslab
