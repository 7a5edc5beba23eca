#pragma once
// Exact Haar moments for t <= 2 and the brute-force second-moment oracle.
// The oracle replaces every site's unitary by its exact moment operator and
// contracts the doubled-and-conjugated network directly — no spin-chain
// simplification — so it is the ground truth the transfer-matrix module is
// tested against.
//
// Copy ordering, frozen: the four copies are (ket1, ket2, bra1, bra2), i.e.
// E[U (x) U (x) conj(U) (x) conj(U)] with rows (a1, a2, c1, c2) flattened
// row-major. Permutation states pair kets with bras: |sigma> has entries
// delta(a1, c_sigma(1)) delta(a2, c_sigma(2)).

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rmpslab/mps.hpp"
#include "rmpslab/pattern.hpp"

namespace rmpslab {

enum class PermutationS2 { Identity, Swap };

PermutationS2 compose(PermutationS2 a, PermutationS2 b);

// t = 1: 1/q. t = 2: Identity -> 1/(q^2-1), Swap -> -1/(q(q^2-1)).
// q = 1 at t = 2 is singular.
double wg(PermutationS2 sigma, std::size_t q, int t);

struct MomentOperator {
  std::size_t q = 0;
  int t = 0;
  Eigen::MatrixXcd matrix;  // q^{2t} x q^{2t}
};

inline constexpr std::size_t kMomentOperatorCap = 4096;  // on q^{2t}

// Memoized by (q, t); single writer, many readers. Throws CapExceeded when
// q^{2t} > 4096.
const MomentOperator& moment_operator(std::size_t q, int t);

// Per-site second-moment tensor with the physical-slot-0 inputs already fed
// in: S[(i1..i4), (l1..l4), (r1..r4)] = E[ A_{i1}(l1,r1) A_{i2}(l2,r2)
// conj(A_{i3}(l3,r3)) conj(A_{i4}(l4,r4)) ]. Entries are real. Stored
// row-major as (d^4, D^4, D^4).
struct SiteMomentTensor {
  int d = 0, D = 0;
  std::vector<double> s;  // d^4 * D^4 * D^4
};
SiteMomentTensor site_moment_tensor(int d, int D);

// Exact E[second-moment functional] for the pattern's ring: Blue sites weigh
// the physical copies delta(i1,i3) delta(i2,i4), Green delta(i1,i4) delta(i2,i3)
// (Green marks the purity subset), Obs weighs O(i3,i1) O(i4,i2).
// Requires q = d*D <= 8.
double oracle_second_moment(const SpinChainPattern& pattern, int d, int D);

// Full moment matrix M[(x1,x2),(y1,y2)] = E[ psi_x1 psi_x2 conj(psi_y1)
// conj(psi_y2) ] of the n-site ring ensemble, dimension d^{2n}. Caps: both
// d^{4n} and D^8 d^{4(n-1)} must stay <= 2^24.
Eigen::MatrixXcd state_second_moment_matrix(int d, int n, int D);

// tr[M^2] via the per-site doubled transfer operator (two independent copies
// of the site moment tensor contracted over their physical pairs); requires
// D^8 <= 4096. Independent of state_second_moment_matrix.
double state_fourth_overlap_trace(int d, int n, int D);

// E |<psi|phi>|^4 for a FIXED normalized phi (length d^n), via the moment matrix.
double oracle_overlap_fourth_moment(int d, int n, int D, const Eigen::VectorXcd& phi);

}  // namespace rmpslab
