#pragma once
// The sampled ensemble: site cores cut out of i.i.d. Haar unitaries on a
// (d*D)-dimensional space, one per site, ring-closed by default. States are
// stored UNNORMALIZED; consumers pick raw or normalized quantities explicitly.
//
// Index conventions, frozen across the whole codebase:
//   - U on C^d (x) C^D flattens (i, b) -> i*D + b  (physical index major).
//   - Core A_i(l, r) = U(i*D + l, r): the left bond is U's output bond row,
//     the right bond is U's input bond at physical slot 0.
//   - Chain value is tr[A_{i1} A_{i2} ... A_{in}]: site j's right (column)
//     index contracts with site j+1's left (row) index.
// Under this convention every sampled core is a left isometry,
// sum_i A_i^dag A_i = 1_D.

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "rmpslab/density.hpp"
#include "rmpslab/rng.hpp"
#include "rmpslab/tensor.hpp"

namespace rmpslab {

inline constexpr std::size_t kDefaultAmplitudeCap = std::size_t{1} << 24;

enum class BoundaryKind { Periodic, Open };

struct Boundary {
  BoundaryKind kind = BoundaryKind::Periodic;
  Eigen::VectorXcd left;   // Open only, size D
  Eigen::VectorXcd right;  // Open only, size D
};

struct RmpsEnsembleConfig {
  int d = 2;  // physical dimension, >= 2
  int n = 1;  // sites, >= 1
  int D = 1;  // bond dimension, >= 1
  Boundary boundary{};

  void validate() const;  // throws std::invalid_argument
};

struct SiteCore {
  int d = 0, D = 0;
  std::vector<Eigen::MatrixXcd> a;  // a[i] is D x D, a[i](l, r)

  // Spec layout (left-bond, physical, right-bond).
  DenseTensor as_tensor() const;
  double left_isometry_defect() const;  // max | sum_i A_i^dag A_i - 1 |
};

struct MpsState {
  int d = 0, n = 0, D = 0;
  std::vector<SiteCore> cores;
  Boundary boundary{};
};

// A_i = (<i| (x) 1_D) U (|0> (x) 1_D). U must be (d*D)x(d*D), unitary to 1e-10.
SiteCore core_from_unitary(const Eigen::MatrixXcd& U, int d, int D);

// One Haar unitary per site, drawn from rng.substream(site); a pure function
// of (cfg, stream identity), independent of evaluation order.
MpsState sample_rmps(const RmpsEnsembleConfig& cfg, const RngStream& rng);

// Full amplitude tensor, shape (d, ..., d). Throws CapExceeded above the cap.
DenseTensor materialize(const MpsState& state, std::size_t amplitude_cap = kDefaultAmplitudeCap);

// <psi|psi> via the doubled-bond transfer operator E_j = sum_i A_i (x) conj(A_i);
// never materializes amplitudes.
double norm_squared_tm(const MpsState& state);

// <psi|phi> (both periodic or both open with matching boundary dims).
cplx overlap(const MpsState& psi, const MpsState& phi);

// <psi|O_site (x) 1|psi> via the observable-weighted transfer operator.
cplx observable_expectation(const MpsState& state, const Eigen::MatrixXcd& O, int site);

// Unnormalized reduced density matrix on `subset` (ascending site order).
DensityMatrix reduced_density(const MpsState& state, const std::vector<std::size_t>& subset,
                              std::size_t amplitude_cap = kDefaultAmplitudeCap);

enum class FixtureKind { AllIdentity, TracelessPhase };

// Deterministic fixtures: AllIdentity takes U = 1 at every site (state D|0...0>);
// TracelessPhase additionally replaces site k's unitary by 1_d (x) V with
// V = diag(e^{2 pi i j / D}), making every amplitude a trace of V (= 0).
MpsState fixture_state(FixtureKind kind, const RmpsEnsembleConfig& cfg, int site_k = 0);

// Number of ring bonds cut by the bipartition (subset | complement).
int bonds_cut(int n, const std::vector<std::size_t>& subset);

struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rmpslab
