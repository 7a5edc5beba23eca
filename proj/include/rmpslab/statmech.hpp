#pragma once
// The partition-function engine: second-moment functionals of the ensemble
// collapse to length-n products of 2x2 transfer matrices over the spin basis
// (1, F) — identity vs swap pairing of the two state copies. Entries are
// eta-weighted plaquettes; orientation (row = left spin) is pinned by
// agreement with the brute-force oracle, which is asserted in tests for the
// pattern families {all-Blue, one Green block, every-k-th Green, single Obs}.

#include <Eigen/Dense>

#include "rmpslab/pattern.hpp"

namespace rmpslab {

// (x y^2 - x) / (x^2 y^2 - 1); requires x*y > 1. eta(x,y) <= 1/x.
double eta(double x, double y);

// Decay rate log((d - 1/(d D^2)) / ((1 + 1/D)(1 + 1/(d D)))); vacuous (0) at d=D=2.
double alpha(int d, int D);

struct TransferMatrix2 {
  // row = left spin, col = right spin, basis order (1, F)
  double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

// Blue = [[eta(d,D), 0], [eta(D,d), 1]]; Green is the label-swap conjugate
// [[1, eta(D,d)], [0, eta(d,D)]]. Obs requires Hermitian AND traceless O (the
// w.l.o.g. reduction: shift O -> O - tr(O)/d before calling); its four entries
// scale linearly in tr[O^2].
TransferMatrix2 site_transfer_matrix(const SiteTag& tag, int d, int D);

// tr[ T_1 T_2 ... T_n ] over the pattern's ring.
double exact_chain_value(const SpinChainPattern& pattern, int d, int D);

// E<psi|psi>^2 = 1 + eta(d,D)^n  (<= 1 + d^-n).
double norm_second_moment(int d, int n, int D);

// E tr[rho_A^2], A = l consecutive sites of the n-ring (1 <= l <= n-1):
// eta^{n-l} + eta^l + eta(D,d)^2 (1-eta^l)(1-eta^{n-l})/(1-eta)^2, eta = eta(d,D).
double connected_purity_expectation(int d, int n, int D, int l);

// E tr[rho_A^2], A = every k-th site (k | n, k >= 2): tr[(B^{k-1} G)^{n/k}].
double disconnected_purity_expectation(int d, int n, int D, int k);

// (eta(d,D)^{k-1} + eta(D,d) + eta(d,D))^{n/k}; upper bound for the above.
double extensivity_purity_bound(int d, int n, int D, int k);

// E |<psi|phi>|^4 <= 2 (1+1/D)^n (1+1/(dD))^n / (d^2 - 1/D^2)^n
// = 2 e^{-alpha(d,D) n} d^{-n}.
double overlap_fourth_moment_bound(int d, int n, int D);

struct LocalObsMoment {
  double exact = 0.0;  // ring of (n-1) Blue + 1 Obs
  double bound = 0.0;  // 2 D^-2 tr[O^2]
};
// Requires traceless Hermitian O, n >= 2.
LocalObsMoment local_observable_second_moment(int d, int n, int D, const Eigen::MatrixXcd& O);

// Closed form of the same exact value:
// tr[O^2]/(d D^2 + 1) * ( 1/d + eta(d,D)^{n-1} d D^2 (D^2 - 1)/(d^2 D^2 - 1) ).
double local_observable_second_moment_closed_form(int d, int n, int D, double trace_o_sq);

// min(1, expectation_upper_bound / threshold); both arguments > 0.
double markov_tail(double expectation_upper_bound, double threshold);

// Exact frame potential E|<psi|phi>|^4 over independent pairs, raw states.
// Equals tr[M^2]; computed by the cheap doubled-transfer path when D^8 <= 4096,
// else through the explicit moment matrix. Throws CapExceeded beyond both caps.
double frame_potential_2(int d, int n, int D);

// Pair-normalized variant raw / (1 + eta^n)^2; at n=1 this is the Haar value
// 2/(d(d+1)) exactly (a single-site state is Haar after normalization).
double frame_potential_2_normalized(int d, int n, int D);

// || M - 2 P_sym / (q(q+1)) ||_F^2 with q = d^n, computed directly from the
// explicit moment matrix (never via the frame-potential identity; the
// identity is only exact for normalized ensembles and is checked as a
// consistency test at D = 1 where the ensemble is exactly normalized).
double design_distance_sq(int d, int n, int D);

// Haar floor 2/(q(q+1)) with q = d^n.
double frame_potential_haar_floor(int d, int n);

// Finite-size exclusion radius implied by the bond-floor purity obstruction,
// d^-n (1/D - 2 d^{n/2}/(d^n+1)): a swap witness on half the sites separates
// the ensemble from the 2-design projector by at least this Frobenius
// distance whenever the single-cut purity floor 1/D exceeds the Haar
// half-split purity. Requires even n; may be <= 0 (no exclusion) at large D.
double design_distance_exclusion(int d, int n, int D);

}  // namespace rmpslab
