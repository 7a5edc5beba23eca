#include "rmpslab/weingarten.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace rmpslab {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t p = 1;
  while (e-- > 0) p *= b;
  return p;
}

void cap_check(std::size_t value, std::size_t cap, const char* what) {
  if (value > cap) {
    std::ostringstream os;
    os << what << " = " << value << " exceeds cap " << cap;
    throw CapExceeded(os.str());
  }
}

}  // namespace

PermutationS2 compose(PermutationS2 a, PermutationS2 b) {
  return a == b ? PermutationS2::Identity : PermutationS2::Swap;
}

double wg(PermutationS2 sigma, std::size_t q, int t) {
  if (q < 1) throw std::invalid_argument("wg: q must be >= 1");
  if (t == 1) {
    if (sigma != PermutationS2::Identity)
      throw std::invalid_argument("wg: t = 1 admits only the identity");
    return 1.0 / static_cast<double>(q);
  }
  if (t != 2) throw std::invalid_argument("wg: only t <= 2 supported");
  if (q == 1) throw std::invalid_argument("wg: t = 2 is singular at q = 1");
  const double qd = static_cast<double>(q);
  return sigma == PermutationS2::Identity ? 1.0 / (qd * qd - 1.0)
                                          : -1.0 / (qd * (qd * qd - 1.0));
}

const MomentOperator& moment_operator(std::size_t q, int t) {
  if (t != 1 && t != 2) throw std::invalid_argument("moment_operator: only t <= 2 supported");
  if (q < 1 || (t == 2 && q == 1))
    throw std::invalid_argument("moment_operator: q out of range for this t");
  const std::size_t dim = ipow(q, 2 * t);
  cap_check(dim, kMomentOperatorCap, "moment operator dimension q^(2t)");

  static std::mutex mu;
  static std::map<std::pair<std::size_t, int>, std::unique_ptr<MomentOperator>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{q, t}];
  if (slot) return *slot;

  auto op = std::make_unique<MomentOperator>();
  op->q = q;
  op->t = t;
  op->matrix = Eigen::MatrixXcd::Zero(dim, dim);

  if (t == 1) {
    // E[U (x) conj U][(a,c),(b,d)] = delta_ac delta_bd / q
    const double w = 1.0 / static_cast<double>(q);
    for (std::size_t a = 0; a < q; ++a)
      for (std::size_t b = 0; b < q; ++b) op->matrix(a * q + a, b * q + b) = w;
  } else {
    // |sigma>[(a1,a2,c1,c2)] = delta(a1, c_sigma(1)) delta(a2, c_sigma(2))
    auto perm_vector = [&](PermutationS2 s) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
      for (std::size_t a1 = 0; a1 < q; ++a1)
        for (std::size_t a2 = 0; a2 < q; ++a2) {
          const std::size_t c1 = (s == PermutationS2::Identity) ? a1 : a2;
          const std::size_t c2 = (s == PermutationS2::Identity) ? a2 : a1;
          v(((a1 * q + a2) * q + c1) * q + c2) = 1.0;
        }
      return v;
    };
    const std::array<PermutationS2, 2> perms{PermutationS2::Identity, PermutationS2::Swap};
    const Eigen::VectorXd vid = perm_vector(PermutationS2::Identity);
    const Eigen::VectorXd vsw = perm_vector(PermutationS2::Swap);
    for (PermutationS2 s : perms)
      for (PermutationS2 p : perms) {
        const Eigen::VectorXd& vs = (s == PermutationS2::Identity) ? vid : vsw;
        const Eigen::VectorXd& vp = (p == PermutationS2::Identity) ? vid : vsw;
        op->matrix += wg(compose(s, p), q, 2) * (vs * vp.transpose()).cast<cplx>();
      }
  }
  slot = std::move(op);
  return *slot;
}

SiteMomentTensor site_moment_tensor(int d, int D) {
  if (d < 2 || D < 1) throw std::invalid_argument("site_moment_tensor: need d >= 2, D >= 1");
  const std::size_t q = static_cast<std::size_t>(d) * D;
  const std::size_t d4 = ipow(d, 4), D4 = ipow(D, 4);
  cap_check(d4 * D4 * D4, std::size_t{1} << 24, "site moment tensor size d^4 D^8");

  SiteMomentTensor S;
  S.d = d;
  S.D = D;
  S.s.assign(d4 * D4 * D4, 0.0);

  const std::array<PermutationS2, 2> perms{PermutationS2::Identity, PermutationS2::Swap};
  for (PermutationS2 sig : perms)
    for (PermutationS2 pi : perms) {
      const double w = wg(compose(sig, pi), q, 2);
      // sigma pairs (ket_m, bra_{sigma(m)}) on the joint (phys, left-bond)
      // index; pi pairs the right-bond copies (phys slot 0 already fed in)
      for (int i1 = 0; i1 < d; ++i1)
        for (int i2 = 0; i2 < d; ++i2) {
          const int i3 = (sig == PermutationS2::Identity) ? i1 : i2;
          const int i4 = (sig == PermutationS2::Identity) ? i2 : i1;
          const std::size_t iflat = ((static_cast<std::size_t>(i1) * d + i2) * d + i3) * d + i4;
          for (int l1 = 0; l1 < D; ++l1)
            for (int l2 = 0; l2 < D; ++l2) {
              const int l3 = (sig == PermutationS2::Identity) ? l1 : l2;
              const int l4 = (sig == PermutationS2::Identity) ? l2 : l1;
              const std::size_t lflat =
                  ((static_cast<std::size_t>(l1) * D + l2) * D + l3) * D + l4;
              double* row = &S.s[(iflat * D4 + lflat) * D4];
              for (int r1 = 0; r1 < D; ++r1)
                for (int r2 = 0; r2 < D; ++r2) {
                  const int r3 = (pi == PermutationS2::Identity) ? r1 : r2;
                  const int r4 = (pi == PermutationS2::Identity) ? r2 : r1;
                  row[((static_cast<std::size_t>(r1) * D + r2) * D + r3) * D + r4] += w;
                }
            }
        }
    }
  return S;
}

double oracle_second_moment(const SpinChainPattern& pattern, int d, int D) {
  pattern.validate();
  cap_check(static_cast<std::size_t>(d) * D, 8, "oracle site dimension d*D");
  const SiteMomentTensor S = site_moment_tensor(d, D);
  const std::size_t D4 = ipow(D, 4);

  auto site_matrix = [&](const SiteTag& tag) {
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(D4, D4);
    auto add_slice = [&](std::size_t iflat, cplx weight) {
      const double* block = &S.s[iflat * D4 * D4];
      for (std::size_t l = 0; l < D4; ++l)
        for (std::size_t r = 0; r < D4; ++r) W(l, r) += weight * block[l * D4 + r];
    };
    if (tag.kind == SiteTag::Kind::Obs) {
      for (int i1 = 0; i1 < d; ++i1)
        for (int i2 = 0; i2 < d; ++i2)
          for (int i3 = 0; i3 < d; ++i3)
            for (int i4 = 0; i4 < d; ++i4) {
              const cplx w = tag.O(i3, i1) * tag.O(i4, i2);
              if (w == cplx{0.0, 0.0}) continue;
              add_slice(((static_cast<std::size_t>(i1) * d + i2) * d + i3) * d + i4, w);
            }
    } else {
      const bool green = tag.kind == SiteTag::Kind::Green;
      for (int i1 = 0; i1 < d; ++i1)
        for (int i2 = 0; i2 < d; ++i2) {
          const int i3 = green ? i2 : i1;  // Green swaps the bra pairing
          const int i4 = green ? i1 : i2;
          add_slice(((static_cast<std::size_t>(i1) * d + i2) * d + i3) * d + i4, 1.0);
        }
    }
    return W;
  };

  Eigen::MatrixXcd prod = site_matrix(pattern.sites[0]);
  for (std::size_t j = 1; j < pattern.sites.size(); ++j) prod *= site_matrix(pattern.sites[j]);
  return prod.trace().real();
}

Eigen::MatrixXcd state_second_moment_matrix(int d, int n, int D) {
  if (n < 1) throw std::invalid_argument("state_second_moment_matrix: n must be >= 1");
  const std::size_t cap = std::size_t{1} << 24;
  std::size_t d4n = 1;
  for (int j = 0; j < n; ++j) {
    d4n *= ipow(d, 4);
    cap_check(d4n, cap, "moment matrix size d^(4n)");
  }
  const std::size_t d4 = ipow(d, 4), D4 = ipow(D, 4), D8 = D4 * D4;
  cap_check(D8 * (d4n / d4), cap, "moment matrix intermediate D^8 d^(4(n-1))");

  const SiteMomentTensor S = site_moment_tensor(d, D);
  // S_T[i, r, m] = S[i, m, r]: contiguous inner axis for the dot products
  std::vector<double> st(S.s.size());
  for (std::size_t i = 0; i < d4; ++i)
    for (std::size_t m = 0; m < D4; ++m)
      for (std::size_t r = 0; r < D4; ++r) st[(i * D4 + r) * D4 + m] = S.s[(i * D4 + m) * D4 + r];

  // ring contraction, keeping (phys-so-far, left-bond, right-bond) open
  std::vector<double> t = S.s;  // shape (d^4, D^4, D^4)
  std::size_t P = d4;
  for (int j = 1; j < n - 1; ++j) {
    std::vector<double> next(P * d4 * D8);
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t i = 0; i < d4; ++i)
        for (std::size_t l = 0; l < D4; ++l) {
          const double* trow = &t[(p * D4 + l) * D4];
          double* out = &next[(((p * d4 + i) * D4) + l) * D4];
          for (std::size_t r = 0; r < D4; ++r) {
            const double* srow = &st[(i * D4 + r) * D4];
            double acc = 0.0;
            for (std::size_t m = 0; m < D4; ++m) acc += trow[m] * srow[m];
            out[r] = acc;
          }
        }
    t.swap(next);
    P *= d4;
  }

  // last site closes the ring: sum_l sum_m T[p, l, m] S[i, m, l]
  std::vector<double> closed(d4n);
  if (n == 1) {
    for (std::size_t i = 0; i < d4; ++i) {
      double acc = 0.0;
      for (std::size_t l = 0; l < D4; ++l) acc += S.s[(i * D4 + l) * D4 + l];
      closed[i] = acc;
    }
  } else {
    for (std::size_t p = 0; p < P; ++p)
      for (std::size_t i = 0; i < d4; ++i) {
        double acc = 0.0;
        for (std::size_t l = 0; l < D4; ++l) {
          const double* trow = &t[(p * D4 + l) * D4];
          const double* srow = &st[(i * D4 + l) * D4];
          for (std::size_t m = 0; m < D4; ++m) acc += trow[m] * srow[m];
        }
        closed[p * d4 + i] = acc;
      }
  }

  // reorder from site-major (a1 a2 c1 c2 per site) to copy-major
  // (a1-string, a2-string, c1-string, c2-string)
  const int axes = 4 * n;
  std::vector<std::size_t> gather(axes);  // input stride of each output axis
  {
    std::vector<std::size_t> in_stride(axes, 1);
    for (int a = axes - 1; a > 0; --a) in_stride[a - 1] = in_stride[a] * d;
    for (int m = 0; m < 4; ++m)
      for (int j = 0; j < n; ++j) gather[m * n + j] = in_stride[4 * j + m];
  }
  const std::size_t dim = ipow(d, 2 * n);
  Eigen::MatrixXcd M(dim, dim);
  std::vector<int> idx(axes, 0);
  std::size_t src = 0;
  for (std::size_t dst = 0; dst < d4n; ++dst) {
    M(dst / dim, dst % dim) = closed[src];
    for (int ax = axes; ax-- > 0;) {
      if (++idx[ax] < d) {
        src += gather[ax];
        break;
      }
      idx[ax] = 0;
      src -= gather[ax] * (d - 1);
    }
  }
  return M;
}

double state_fourth_overlap_trace(int d, int n, int D) {
  if (n < 1) throw std::invalid_argument("state_fourth_overlap_trace: n must be >= 1");
  const std::size_t D4 = ipow(D, 4), D8 = D4 * D4;
  cap_check(D8, 4096, "doubled transfer dimension D^8");
  const SiteMomentTensor S = site_moment_tensor(d, D);
  const std::size_t d4 = ipow(d, 4);

  // swap(i1 i2 i3 i4) = (i3 i4 i1 i2): the second copy's kets are the first
  // copy's bras, which is what squaring the moment matrix does to the traces
  std::vector<std::size_t> swapped(d4);
  for (std::size_t i = 0; i < d4; ++i) {
    std::size_t rest = i;
    const std::size_t i4 = rest % d;
    rest /= d;
    const std::size_t i3 = rest % d;
    rest /= d;
    const std::size_t i2 = rest % d;
    const std::size_t i1 = rest / d;
    swapped[i] = ((i3 * d + i4) * d + i1) * d + i2;
  }

  Eigen::MatrixXd t2 = Eigen::MatrixXd::Zero(D8, D8);
  for (std::size_t i = 0; i < d4; ++i) {
    const double* s1 = &S.s[i * D8];
    const double* s2 = &S.s[swapped[i] * D8];
    for (std::size_t l = 0; l < D4; ++l)
      for (std::size_t lp = 0; lp < D4; ++lp)
        for (std::size_t r = 0; r < D4; ++r) {
          const double f = s1[l * D4 + r];
          if (f == 0.0) continue;
          for (std::size_t rp = 0; rp < D4; ++rp)
            t2(l * D4 + lp, r * D4 + rp) += f * s2[lp * D4 + rp];
        }
  }

  Eigen::MatrixXd prod = t2;
  for (int j = 1; j < n; ++j) prod = prod * t2;
  return prod.trace();
}

double oracle_overlap_fourth_moment(int d, int n, int D, const Eigen::VectorXcd& phi) {
  const std::size_t dim = ipow(d, n);
  if (static_cast<std::size_t>(phi.size()) != dim)
    throw std::invalid_argument("oracle_overlap_fourth_moment: phi must have length d^n");
  if (std::abs(phi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("oracle_overlap_fourth_moment: phi must be normalized");
  const Eigen::MatrixXcd M = state_second_moment_matrix(d, n, D);
  Eigen::VectorXcd v(dim * dim);
  for (std::size_t x1 = 0; x1 < dim; ++x1)
    for (std::size_t x2 = 0; x2 < dim; ++x2) v(x1 * dim + x2) = phi(x1) * phi(x2);
  return (v.adjoint() * M * v).value().real();
}

}  // namespace rmpslab
