#include "rmpslab/mps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rmpslab/haar.hpp"

namespace rmpslab {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::size_t checked_pow(std::size_t base, int exp, std::size_t cap, const char* what) {
  std::size_t p = 1;
  for (int i = 0; i < exp; ++i) {
    if (p > cap / base) {
      std::ostringstream os;
      os << what << " exceeds cap " << cap;
      throw CapExceeded(os.str());
    }
    p *= base;
  }
  if (p > cap) {
    std::ostringstream os;
    os << what << " exceeds cap " << cap;
    throw CapExceeded(os.str());
  }
  return p;
}

// doubled-bond site operator sum_{i,i'} W(i',i) A_i (x) conj(A_{i'});
// W = identity gives the plain norm transfer operator
Eigen::MatrixXcd weighted_transfer(const SiteCore& core, const Eigen::MatrixXcd& W) {
  const int D = core.D;
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(D * D, D * D);
  for (int i = 0; i < core.d; ++i)
    for (int ip = 0; ip < core.d; ++ip) {
      const cplx w = W(ip, i);
      if (w == cplx{0.0, 0.0}) continue;
      const Eigen::MatrixXcd& K = core.a[i];
      const Eigen::MatrixXcd B = core.a[ip].conjugate();
      for (int l1 = 0; l1 < D; ++l1)
        for (int r1 = 0; r1 < D; ++r1) {
          const cplx f = w * K(l1, r1);
          if (f == cplx{0.0, 0.0}) continue;
          E.block(l1 * D, r1 * D, D, D) += f * B;
        }
    }
  return E;
}

Eigen::VectorXcd doubled_boundary(const Eigen::VectorXcd& ket, const Eigen::VectorXcd& bra) {
  const auto D1 = ket.size(), D2 = bra.size();
  Eigen::VectorXcd v(D1 * D2);
  for (Eigen::Index a = 0; a < D1; ++a)
    for (Eigen::Index b = 0; b < D2; ++b) v(a * D2 + b) = ket(a) * std::conj(bra(b));
  return v;
}

}  // namespace

void RmpsEnsembleConfig::validate() const {
  require(d >= 2, "ensemble config: d must be >= 2");
  require(n >= 1, "ensemble config: n must be >= 1");
  require(D >= 1, "ensemble config: D must be >= 1");
  if (boundary.kind == BoundaryKind::Open) {
    require(boundary.left.size() == D, "ensemble config: open boundary needs a left vector of size D");
    require(boundary.right.size() == D, "ensemble config: open boundary needs a right vector of size D");
  }
}

DenseTensor SiteCore::as_tensor() const {
  DenseTensor t({static_cast<std::size_t>(D), static_cast<std::size_t>(d),
                 static_cast<std::size_t>(D)});
  for (int l = 0; l < D; ++l)
    for (int i = 0; i < d; ++i)
      for (int r = 0; r < D; ++r) t.data[(static_cast<std::size_t>(l) * d + i) * D + r] = a[i](l, r);
  return t;
}

double SiteCore::left_isometry_defect() const {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(D, D);
  for (int i = 0; i < d; ++i) s += a[i].adjoint() * a[i];
  s -= Eigen::MatrixXcd::Identity(D, D);
  return s.cwiseAbs().maxCoeff();
}

SiteCore core_from_unitary(const Eigen::MatrixXcd& U, int d, int D) {
  require(d >= 1 && D >= 1, "core_from_unitary: dimensions must be positive");
  const int q = d * D;
  require(U.rows() == q && U.cols() == q, "core_from_unitary: U must be (d*D) x (d*D)");
  const double defect =
      (U.adjoint() * U - Eigen::MatrixXcd::Identity(q, q)).cwiseAbs().maxCoeff();
  require(defect <= 1e-10, "core_from_unitary: U is not unitary");

  SiteCore core;
  core.d = d;
  core.D = D;
  core.a.reserve(d);
  for (int i = 0; i < d; ++i) core.a.push_back(U.block(i * D, 0, D, D));
  return core;
}

MpsState sample_rmps(const RmpsEnsembleConfig& cfg, const RngStream& rng) {
  cfg.validate();
  MpsState state;
  state.d = cfg.d;
  state.n = cfg.n;
  state.D = cfg.D;
  state.boundary = cfg.boundary;
  state.cores.reserve(cfg.n);
  for (int site = 0; site < cfg.n; ++site) {
    RngStream s = rng.substream(static_cast<std::uint64_t>(site));
    state.cores.push_back(core_from_unitary(sample_haar_unitary(cfg.d * cfg.D, s), cfg.d, cfg.D));
  }
  return state;
}

DenseTensor materialize(const MpsState& state, std::size_t amplitude_cap) {
  checked_pow(state.d, state.n, amplitude_cap, "amplitude tensor size d^n");

  if (state.boundary.kind == BoundaryKind::Periodic) {
    DenseTensor t = state.cores[0].as_tensor();  // (D, d, D)
    for (int j = 1; j < state.n; ++j)
      t = contract(t, state.cores[j].as_tensor(), {{t.rank() - 1, 0}});
    // close the ring: trace left bond against right bond
    return contract(t, DenseTensor::identity(state.D), {{0, 0}, {t.rank() - 1, 1}});
  }

  DenseTensor vl({static_cast<std::size_t>(state.D)});
  DenseTensor vr({static_cast<std::size_t>(state.D)});
  for (int b = 0; b < state.D; ++b) {
    vl.data[b] = state.boundary.left(b);
    vr.data[b] = state.boundary.right(b);
  }
  DenseTensor t = contract(vl, state.cores[0].as_tensor(), {{0, 0}});  // (d, D)
  for (int j = 1; j < state.n; ++j)
    t = contract(t, state.cores[j].as_tensor(), {{t.rank() - 1, 0}});
  return contract(t, vr, {{t.rank() - 1, 0}});
}

double norm_squared_tm(const MpsState& state) {
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(state.d, state.d);
  Eigen::MatrixXcd prod = weighted_transfer(state.cores[0], id);
  for (int j = 1; j < state.n; ++j) prod *= weighted_transfer(state.cores[j], id);
  if (state.boundary.kind == BoundaryKind::Periodic) return prod.trace().real();
  const Eigen::VectorXcd vl = doubled_boundary(state.boundary.left, state.boundary.left);
  const Eigen::VectorXcd vr = doubled_boundary(state.boundary.right, state.boundary.right);
  return (vl.transpose() * prod * vr).value().real();
}

cplx overlap(const MpsState& psi, const MpsState& phi) {
  require(psi.d == phi.d && psi.n == phi.n, "overlap: states must share (d, n)");
  require(psi.boundary.kind == phi.boundary.kind, "overlap: boundary kinds differ");
  const int Dk = phi.D, Db = psi.D;

  auto mixed_transfer = [&](int j) {
    Eigen::MatrixXcd F = Eigen::MatrixXcd::Zero(Dk * Db, Dk * Db);
    for (int i = 0; i < psi.d; ++i) {
      const Eigen::MatrixXcd& K = phi.cores[j].a[i];
      const Eigen::MatrixXcd B = psi.cores[j].a[i].conjugate();
      for (int l1 = 0; l1 < Dk; ++l1)
        for (int r1 = 0; r1 < Dk; ++r1) {
          if (K(l1, r1) == cplx{0.0, 0.0}) continue;
          F.block(l1 * Db, r1 * Db, Db, Db) += K(l1, r1) * B;
        }
    }
    return F;
  };

  Eigen::MatrixXcd prod = mixed_transfer(0);
  for (int j = 1; j < psi.n; ++j) prod *= mixed_transfer(j);
  if (psi.boundary.kind == BoundaryKind::Periodic) return prod.trace();
  const Eigen::VectorXcd vl = doubled_boundary(phi.boundary.left, psi.boundary.left);
  const Eigen::VectorXcd vr = doubled_boundary(phi.boundary.right, psi.boundary.right);
  return (vl.transpose() * prod * vr).value();
}

cplx observable_expectation(const MpsState& state, const Eigen::MatrixXcd& O, int site) {
  require(O.rows() == state.d && O.cols() == state.d, "observable_expectation: O must be d x d");
  require(site >= 0 && site < state.n, "observable_expectation: site out of range");
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(state.d, state.d);
  Eigen::MatrixXcd prod =
      weighted_transfer(state.cores[0], site == 0 ? O : id);
  for (int j = 1; j < state.n; ++j)
    prod *= weighted_transfer(state.cores[j], site == j ? O : id);
  if (state.boundary.kind == BoundaryKind::Periodic) return prod.trace();
  const Eigen::VectorXcd vl = doubled_boundary(state.boundary.left, state.boundary.left);
  const Eigen::VectorXcd vr = doubled_boundary(state.boundary.right, state.boundary.right);
  return (vl.transpose() * prod * vr).value();
}

DensityMatrix reduced_density(const MpsState& state, const std::vector<std::size_t>& subset,
                              std::size_t amplitude_cap) {
  require(!subset.empty(), "reduced_density: subset must be non-empty");
  std::vector<std::size_t> keep = subset;
  std::sort(keep.begin(), keep.end());
  require(std::adjacent_find(keep.begin(), keep.end()) == keep.end(),
          "reduced_density: duplicate site in subset");
  require(keep.back() < static_cast<std::size_t>(state.n), "reduced_density: site out of range");

  const DenseTensor amp = materialize(state, amplitude_cap);
  std::vector<std::size_t> perm = keep, env;
  for (std::size_t s = 0; s < static_cast<std::size_t>(state.n); ++s)
    if (!std::binary_search(keep.begin(), keep.end(), s)) env.push_back(s);
  perm.insert(perm.end(), env.begin(), env.end());
  const DenseTensor re = transpose(amp, perm);

  const std::size_t kdim = checked_pow(state.d, static_cast<int>(keep.size()),
                                       amplitude_cap, "reduced density size d^|A|");
  const std::size_t edim = re.size() / kdim;

  using MatrixXc = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const MatrixXc> psi(re.data.data(), kdim, edim);
  const MatrixXc rho = psi * psi.adjoint();
  return DensityMatrix(kdim, std::vector<cplx>(rho.data(), rho.data() + kdim * kdim));
}

MpsState fixture_state(FixtureKind kind, const RmpsEnsembleConfig& cfg, int site_k) {
  cfg.validate();
  require(site_k >= 0 && site_k < cfg.n, "fixture_state: site_k out of range");
  if (kind == FixtureKind::TracelessPhase)
    require(cfg.D >= 2, "fixture_state: TracelessPhase requires D >= 2");

  const int q = cfg.d * cfg.D;
  MpsState state;
  state.d = cfg.d;
  state.n = cfg.n;
  state.D = cfg.D;
  state.boundary = cfg.boundary;
  for (int site = 0; site < cfg.n; ++site) {
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(q, q);
    if (kind == FixtureKind::TracelessPhase && site == site_k) {
      // 1_d (x) V with V the clock matrix; every amplitude becomes tr V = 0
      Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(cfg.D, cfg.D);
      for (int j = 0; j < cfg.D; ++j)
        V(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / cfg.D);
      U.setZero();
      for (int i = 0; i < cfg.d; ++i) U.block(i * cfg.D, i * cfg.D, cfg.D, cfg.D) = V;
    }
    state.cores.push_back(core_from_unitary(U, cfg.d, cfg.D));
  }
  return state;
}

int bonds_cut(int n, const std::vector<std::size_t>& subset) {
  std::vector<bool> in(n, false);
  for (std::size_t s : subset) {
    require(s < static_cast<std::size_t>(n), "bonds_cut: site out of range");
    in[s] = true;
  }
  int cuts = 0;
  for (int j = 0; j < n; ++j)
    if (in[j] != in[(j + 1) % n]) ++cuts;
  return cuts;
}

}  // namespace rmpslab
