#include "klein4/holo.hpp"

#include <algorithm>

namespace klein4 {

namespace la = linalg;
using Eigen::Index;

bool FunctionFieldElement::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](const RatFun& x) { return x.is_zero(); });
}

bool operator==(const FunctionFieldElement& a, const FunctionFieldElement& b) { return a.c == b.c; }

FunctionFieldElement operator+(const FunctionFieldElement& a, const FunctionFieldElement& b) {
  FunctionFieldElement r;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

FunctionFieldElement operator*(const RatFun& s, const FunctionFieldElement& a) {
  FunctionFieldElement r;
  for (std::size_t i = 0; i < 4; ++i) r.c[i] = s * a.c[i];
  return r;
}

FunctionField::FunctionField(const CoverAnalysis& a)
    : ctx_(a.ctx()), p_(a.sp.reduced), q_(a.sq.reduced), e_(a.e) {}

FunctionFieldElement FunctionField::scalar(const RatFun& f) const {
  return {{f, RatFun(ctx_), RatFun(ctx_), RatFun(ctx_)}};
}

FunctionFieldElement FunctionField::one() const { return scalar(RatFun::constant(ctx_->one(), ctx_)); }

FunctionFieldElement FunctionField::generator(Role r) const {
  FunctionFieldElement g = zero();
  const RatFun one = RatFun::constant(ctx_->one(), ctx_);
  switch (r) {
    case Role::U: g.c[1] = one; break;
    case Role::V: g.c[2] = one; break;
    case Role::UV:
      g.c[0] = e_;
      g.c[1] = one;
      g.c[2] = one;
      break;
  }
  return g;
}

FunctionFieldElement FunctionField::mul(const FunctionFieldElement& a, const FunctionFieldElement& b) const {
  // x[i][j] is the coefficient of u^i v^j, 0 <= i, j <= 2 before reduction.
  RatFun x[3][3];
  for (auto& row : x) {
    for (auto& v : row) v = RatFun(ctx_);
  }
  for (int i = 0; i < 4; ++i) {
    if (a.c[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < 4; ++j) {
      if (b.c[static_cast<std::size_t>(j)].is_zero()) continue;
      const int du = (i & 1) + (j & 1);
      const int dv = (i >> 1) + (j >> 1);
      x[du][dv] += a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
    }
  }
  // u^2 = u + p, then v^2 = v + q.
  for (int j = 0; j < 3; ++j) {
    if (x[2][j].is_zero()) continue;
    x[1][j] += x[2][j];
    x[0][j] += p_ * x[2][j];
  }
  for (int i = 0; i < 2; ++i) {
    if (x[i][2].is_zero()) continue;
    x[i][1] += x[i][2];
    x[i][0] += q_ * x[i][2];
  }
  return {{x[0][0], x[1][0], x[0][1], x[1][1]}};
}

FunctionFieldElement FunctionField::act(Involution g, const FunctionFieldElement& a) const {
  // g(u~) = u~ + du, g(v~) = v~ + dv with du, dv in {0, 1}.
  const bool du = g != Involution::Sigma;
  const bool dv = g != Involution::Tau;
  FunctionFieldElement r = a;
  if (du) {
    r.c[0] += a.c[1];
    r.c[2] += a.c[3];
  }
  if (dv) {
    r.c[0] += a.c[2];
    r.c[1] += a.c[3];
  }
  if (du && dv) r.c[0] += a.c[3];
  return r;
}

namespace {

using Mat4 = std::array<std::array<RatFun, 4>, 4>;

Mat4 invert(Mat4 m, const FieldCtx* ctx) {
  Mat4 inv;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      inv[i][j] = i == j ? RatFun::constant(ctx->one(), ctx) : RatFun(ctx);
    }
  }
  for (std::size_t col = 0; col < 4; ++col) {
    std::size_t p = col;
    while (p < 4 && m[p][col].is_zero()) ++p;
    if (p == 4) throw Error(ErrorKind::InvariantViolation, "local basis is not a basis");
    std::swap(m[p], m[col]);
    std::swap(inv[p], inv[col]);
    const RatFun f = m[col][col];
    for (std::size_t j = 0; j < 4; ++j) {
      m[col][j] /= f;
      inv[col][j] /= f;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (i == col || m[i][col].is_zero()) continue;
      const RatFun g = m[i][col];
      for (std::size_t j = 0; j < 4; ++j) {
        m[i][j] -= g * m[col][j];
        inv[i][j] -= g * inv[col][j];
      }
    }
  }
  return inv;
}

RatFun pi_power(const ProjPoint& y, int e, const FieldCtx* ctx) { return pow(uniformizer(y, ctx), e); }

}  // namespace

FunctionFieldElement partial_generator(const FunctionField& K, const CoverAnalysis& a, const LocalData& ld,
                                       std::size_t branch, int j) {
  const BranchPoint& bp = a.branch[branch];
  const FunctionFieldElement u = K.generator(bp.u_role);
  const FunctionFieldElement v = K.generator(bp.v_role);
  return v + K.scalar(alpha_tilde(ld, K.ctx())) + beta_partial(ld, j, K.ctx()) * u;
}

LocalFrame local_frame(const FunctionField& K, const CoverAnalysis& a, const std::vector<LocalData>& locals,
                       std::size_t branch) {
  const BranchPoint& bp = a.branch[branch];
  LocalFrame fr;
  fr.branch = branch;
  fr.u = K.generator(bp.u_role);
  fr.v = K.generator(bp.v_role);
  fr.w = partial_generator(K, a, locals[branch], branch, bp.m / 4);
  const std::array<FunctionFieldElement, 4> e{K.one(), fr.u, fr.w, K.mul(fr.u, fr.w)};
  Mat4 m;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) m[r][c] = e[c].c[r];
  }
  fr.to_local = invert(m, K.ctx());
  const int m_ = bp.m;
  const int jump = 2 * (bp.M - bp.m);
  fr.orders = {0, -2 * m_, -m_ - jump, -3 * m_ - jump};
  return fr;
}

std::vector<LocalFrame> local_frames(const FunctionField& K, const CoverAnalysis& a,
                                     const std::vector<LocalData>& locals) {
  std::vector<LocalFrame> out;
  for (std::size_t i = 0; i < a.branch.size(); ++i) out.push_back(local_frame(K, a, locals, i));
  return out;
}

int valuation(const FunctionFieldElement& f, const LocalFrame& frame, const CoverAnalysis& a) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroElement, "valuation of zero");
  const ProjPoint& y = a.branch[frame.branch].y;
  int best = kInfiniteOrder;
  for (std::size_t i = 0; i < 4; ++i) {
    RatFun c(f.c[0].ctx() != nullptr ? f.c[0].ctx() : a.ctx());
    for (std::size_t j = 0; j < 4; ++j) {
      if (!f.c[j].is_zero()) c += frame.to_local[i][j] * f.c[j];
    }
    if (c.is_zero()) continue;
    best = std::min(best, 4 * ord_at(c, y) + frame.orders[i]);
  }
  return best;
}

bool verify_holomorphic(const FunctionFieldElement& f, const FunctionField& K, const CoverAnalysis& a,
                        const std::vector<LocalFrame>& frames) {
  (void)K;
  if (f.is_zero()) return true;
  for (const LocalFrame& fr : frames) {
    const BranchPoint& bp = a.branch[fr.branch];
    if (valuation(f, fr, a) < -4 * bp.k() - bp.different_exp) return false;
  }
  bool inf_branch = false;
  for (const BranchPoint& bp : a.branch) inf_branch = inf_branch || bp.y.infinite;
  for (const RatFun& c : f.c) {
    if (c.is_zero()) continue;
    Poly den = c.den();
    for (const BranchPoint& bp : a.branch) {
      if (bp.y.infinite) continue;
      const Poly lin = Poly::linear(bp.y.mu, den.ctx());
      for (int k = multiplicity(den, bp.y.mu); k > 0; --k) den = den / lin;
    }
    if (den.degree() > 0) return false;
    if (!inf_branch && ord_at(c, ProjPoint::infinity()) < 2) return false;
  }
  return true;
}

BasisSpec build_basis(const FunctionField& K, const CoverAnalysis& a, const std::vector<LocalData>& locals) {
  if (a.genus_Y != 0) throw Error(ErrorKind::NotP1Base, "explicit bases need a rational base curve");
  const FieldCtx* ctx = K.ctx();
  BasisSpec spec;
  for (std::size_t b = 0; b < a.branch.size(); ++b) {
    const BranchPoint& bp = a.branch[b];
    BranchBasisInfo info{mu1(bp.m), mu2(bp.m), mu3(bp.m), bp.nu(), bp.k(), bp.s(), spec.elements.size(), 0};
    const FunctionFieldElement u = K.generator(bp.u_role);
    const FunctionFieldElement v = K.generator(bp.v_role);
    const auto push = [&](int family, int i, const FunctionFieldElement& g) {
      spec.elements.push_back({b, family, i, pi_power(bp.y, -i, ctx) * g});
    };
    for (int i = info.s; i <= info.mu3 + info.nu + info.k; ++i) push(1, i, K.one());
    for (int i = info.s; i <= info.mu1 + info.nu + info.k; ++i) push(2, i, u);
    for (int i = info.s; i <= info.mu1 + info.k; ++i) push(3, i, v);
    for (int i = std::max(info.s, info.mu1 + info.k + 1); i <= info.mu2 + info.k; ++i) {
      push(3, i, partial_generator(K, a, locals[b], b, i - info.mu1 - info.k - 1));
    }
    info.count = spec.elements.size() - info.first;
    spec.per_branch.push_back(info);
  }
  return spec;
}

namespace {

Poly lcm(const Poly& x, const Poly& y) { return monic((x * y) / gcd(x, y)); }

}  // namespace

KleinModule action_matrices(const FunctionField& K, const BasisSpec& basis) {
  const FieldCtx* ctx = K.ctx();
  const Index g = static_cast<Index>(basis.size());
  std::vector<FunctionFieldElement> all;
  all.reserve(static_cast<std::size_t>(3 * g));
  for (const BasisElement& e : basis.elements) all.push_back(e.f);
  for (Involution h : {Involution::Sigma, Involution::Tau}) {
    for (const BasisElement& e : basis.elements) all.push_back(K.act(h, e.f) + e.f);
  }
  Poly L = Poly::constant(ctx->one(), ctx);
  for (const FunctionFieldElement& f : all) {
    for (const RatFun& c : f.c) {
      if (!c.is_zero()) L = lcm(L, c.den());
    }
  }
  std::vector<std::array<Poly, 4>> nums(all.size());
  int D = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    for (std::size_t i = 0; i < 4; ++i) {
      const RatFun& c = all[k].c[i];
      nums[k][i] = c.is_zero() ? Poly(ctx) : c.num() * (L / c.den());
      D = std::max(D, nums[k][i].degree());
    }
  }
  const Index rows = 4 * static_cast<Index>(D + 1);
  GfMatrix lhs = la::zeros<Gf>(rows, g);
  GfMatrix rhs = la::zeros<Gf>(rows, 2 * g);
  for (std::size_t k = 0; k < all.size(); ++k) {
    const Index col = static_cast<Index>(k);
    for (std::size_t i = 0; i < 4; ++i) {
      const Poly& p = nums[k][i];
      for (int d = 0; d <= p.degree(); ++d) {
        const Index row = static_cast<Index>(i) * (D + 1) + d;
        if (col < g) {
          lhs(row, col) = p.coeff(d);
        } else {
          rhs(row, col - g) = p.coeff(d);
        }
      }
    }
  }
  if (la::rank(lhs) != g) throw Error(ErrorKind::InvariantViolation, "basis elements are linearly dependent");
  const auto x = la::solve(lhs, rhs);
  if (!x) throw Error(ErrorKind::InvariantViolation, "the span of the basis is not G-stable");
  return {x->leftCols(g), x->rightCols(g)};
}

namespace {

// (sigma_y, tau_y) in terms of sigma and tau.
std::pair<Involution, Involution> local_generators(CaseTag tag) {
  switch (tag) {
    case CaseTag::I:
    case CaseTag::IIa: return {Involution::Sigma, Involution::Tau};
    case CaseTag::IIb: return {Involution::Tau, Involution::Sigma};
    case CaseTag::IIc: return {Involution::SigmaTau, Involution::Tau};
  }
  return {Involution::Sigma, Involution::Tau};
}

}  // namespace

KleinModule action_matrices_table(const CoverAnalysis& a, const std::vector<LocalData>& locals,
                                  const BasisSpec& basis) {
  std::vector<KleinModule> blocks;
  for (std::size_t b = 0; b < a.branch.size(); ++b) {
    const BranchBasisInfo& in = basis.per_branch[b];
    const LocalData& ld = locals[b];
    const Index n = static_cast<Index>(in.count);
    const int n1 = std::max(0, in.mu3 + in.nu + in.k - in.s + 1);
    const int n2 = std::max(0, in.mu1 + in.nu + in.k - in.s + 1);
    const auto f1 = [&](int i) { return static_cast<Index>(i - in.s); };
    const auto f2 = [&](int i) { return static_cast<Index>(n1 + i - in.s); };
    const auto f3 = [&](int i) { return static_cast<Index>(n1 + n2 + i - in.s); };
    GfMatrix sy = la::zeros<Gf>(n, n);
    GfMatrix ty = la::zeros<Gf>(n, n);
    for (int i = in.s; i <= in.mu1 + in.nu + in.k; ++i) ty(f1(i), f2(i)) = Gf(1);
    for (int i = in.s; i <= in.mu2 + in.k; ++i) {
      sy(f1(i), f3(i)) = Gf(1);
      if (i <= in.mu1 + in.k) continue;
      const int j = i - in.mu1 - in.k - 1;
      for (int ip = 0; ip <= j; ++ip) ty(f1(i + in.nu - ip), f3(i)) += ld.b[static_cast<std::size_t>(ip)];
    }
    const auto [rho1, rho2] = local_generators(a.branch[b].tag);
    blocks.push_back(from_generator_pair(sy, ty, rho1, rho2));
  }
  return direct_sum(blocks);
}

KleinModule lambda_block_module(const BranchPoint& bp, const LocalData& ld) {
  const int nu = bp.nu();
  const int n = mu2(bp.m) - mu1(bp.m) + nu;
  GfMatrix c = la::zeros<Gf>(n, n);
  GfMatrix d = la::zeros<Gf>(n, n);
  for (int i = 0; i + nu < n; ++i) c(i, nu + i) = Gf(1);
  for (int i = 0; i < nu; ++i) d(i, i) = Gf(1);
  for (int i = nu; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (static_cast<std::size_t>(j - i) < ld.b.size()) d(i, j) = ld.b[static_cast<std::size_t>(j - i)];
    }
  }
  const auto corner = [n](const GfMatrix& x) {
    GfMatrix out = la::zeros<Gf>(2 * n, 2 * n);
    out.block(0, n, n, n) = x;
    return out;
  };
  const auto [rho1, rho2] = local_generators(bp.tag);
  return from_generator_pair(corner(c), corner(d), rho1, rho2);
}

}  // namespace klein4
