#include "klein4/klein4rep.hpp"

#include <algorithm>
#include <set>

#include "klein4/poly.hpp"

namespace klein4 {

namespace la = linalg;
using Eigen::Index;

namespace {

GfMatrix zeros(Index r, Index c) { return la::zeros<Gf>(r, c); }
GfMatrix eye(Index n) { return la::identity<Gf>(n); }

// Upper triangular Jordan block.
GfMatrix jordan(int n, const Gf& lambda) {
  GfMatrix j = zeros(n, n);
  for (int i = 0; i < n; ++i) {
    j(i, i) = lambda;
    if (i + 1 < n) j(i, i + 1) = Gf(1);
  }
  return j;
}

// [[0, X], [0, 0]] with X of size r x c.
GfMatrix corner(const GfMatrix& x) {
  GfMatrix out = zeros(x.rows() + x.cols(), x.rows() + x.cols());
  out.block(0, x.rows(), x.rows(), x.cols()) = x;
  return out;
}

Index rank_of(const GfMatrix& a) { return a.size() == 0 ? 0 : la::rank(a); }

GfMatrix stack(const GfMatrix& a, const GfMatrix& b) {
  GfMatrix out(a.rows() + b.rows(), a.cols());
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  if (b.rows() > 0) out.bottomRows(b.rows()) = b;
  return out;
}

GfMatrix hcat(const GfMatrix& a, const GfMatrix& b) {
  GfMatrix out(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

GfMatrix span_basis(const GfMatrix& a) { return a.cols() == 0 ? a : GfMatrix(la::column_basis(a)); }

// Basis of {x : A x in span(W)}.
GfMatrix preimage_of(const GfMatrix& a, const GfMatrix& w) {
  if (a.rows() == 0) return eye(a.cols());
  return GfMatrix(la::preimage(a, w));
}

GfMatrix intersect_of(const GfMatrix& u, const GfMatrix& w) {
  if (u.cols() == 0 || w.cols() == 0) return zeros(u.rows(), 0);
  return GfMatrix(la::intersect(u, w));
}

// Coordinates of the columns of `v` in the (invertible) basis `basis`.
GfMatrix coords(const GfMatrix& basis, const GfMatrix& v) {
  auto x = la::solve(basis, v);
  if (!x) throw Error(ErrorKind::InvariantViolation, "vector outside the expected span");
  return *x;
}

// Pencil (A, B) : C -> R, both R-rows x C-cols.
struct Pencil {
  GfMatrix A;
  GfMatrix B;
};

// The pencil induced on C/P -> R/(A P + B P).
Pencil quotient(const Pencil& p, const GfMatrix& P) {
  const Index q = p.A.cols();
  const Index r = p.A.rows();
  const GfMatrix image = span_basis(hcat(p.A * P, p.B * P));
  const GfMatrix pc = la::complement(P, q);
  const GfMatrix qc = la::complement(image, r);
  const GfMatrix rbasis = hcat(image, qc);
  const GfMatrix a = coords(rbasis, p.A * pc).bottomRows(qc.cols());
  const GfMatrix b = coords(rbasis, p.B * pc).bottomRows(qc.cols());
  return {a, b};
}

// Limit of W_0 = 0, W_{i+1} = X^{-1}(Y W_i), with the dimension sequence.
GfMatrix wong_limit(const GfMatrix& x, const GfMatrix& y, std::vector<Index>* dims = nullptr) {
  GfMatrix w = zeros(x.cols(), 0);
  while (true) {
    const GfMatrix next = preimage_of(x, y * w);
    if (dims != nullptr) dims->push_back(next.cols());
    if (next.cols() == w.cols()) return w;
    w = next;
  }
}

// Splits off the L_eps blocks (minimal column indices). Returns eps values.
std::vector<int> strip_column_blocks(Pencil& p) {
  const GfMatrix wb = wong_limit(p.B, p.A);
  const GfMatrix wa = wong_limit(p.A, p.B);
  const GfMatrix P = intersect_of(wb, wa);
  std::vector<int> eps;
  if (P.cols() == 0) return eps;
  // Restrict to P: the sub-pencil P -> A P + B P consists of L blocks only.
  const GfMatrix image = span_basis(hcat(p.A * P, p.B * P));
  GfMatrix a = image.cols() == 0 ? zeros(0, P.cols()) : coords(image, p.A * P);
  GfMatrix b = image.cols() == 0 ? zeros(0, P.cols()) : coords(image, p.B * P);
  std::vector<Index> dims{0};
  wong_limit(b, a, &dims);
  dims.push_back(dims.back());
  // dims[i] = sum over blocks of min(i, eps + 1).
  for (std::size_t i = 1; i + 1 < dims.size(); ++i) {
    const Index at_least = dims[i] - dims[i - 1];
    const Index longer = dims[i + 1] - dims[i];
    for (Index k = 0; k < at_least - longer; ++k) eps.push_back(static_cast<int>(i) - 1);
  }
  p = quotient(p, P);
  return eps;
}

void add_regular(Decomposition& out, const Pencil& p, const FieldCtx& ctx) {
  const Index n = p.A.cols();
  if (n == 0) return;
  if (p.A.rows() != n) throw Error(ErrorKind::InvariantViolation, "regular part of the pencil is not square");
  std::optional<GfMatrix> inv;
  Gf theta = ctx.zero();
  for (std::uint64_t bits = 0; bits <= ctx.mask(); ++bits) {
    theta = ctx.element(bits);
    inv = la::inverse(GfMatrix(p.B - theta * p.A));
    if (inv) break;
  }
  if (!inv) throw Error(ErrorKind::FieldTooSmall, "every field element is an eigenvalue of the pencil");
  const GfMatrix x = *inv * p.A;
  const std::vector<Gf> cp = la::charpoly(x);
  const Poly chi(cp, &ctx);
  int found = 0;
  for (const Gf& xi : roots(chi)) {
    const GfMatrix shifted = x - xi * eye(n);
    std::vector<Index> ranks{n};
    GfMatrix power = eye(n);
    while (true) {
      power = power * shifted;
      ranks.push_back(rank_of(power));
      if (ranks.back() == ranks[ranks.size() - 2]) break;
    }
    const ProjPoint lambda = xi.is_zero() ? ProjPoint::infinity() : ProjPoint::finite(theta + inverse(xi));
    // blocks of size >= k: ranks[k-1] - ranks[k]
    for (std::size_t k = 1; k + 1 < ranks.size(); ++k) {
      const Index ge = ranks[k - 1] - ranks[k];
      const Index gt = ranks[k] - ranks[k + 1];
      if (ge - gt > 0) {
        add(out, IndecLabel::n(2 * static_cast<int>(k), lambda), static_cast<int>(ge - gt));
        found += static_cast<int>(k * static_cast<std::size_t>(ge - gt));
      }
    }
  }
  if (found != n) throw Error(ErrorKind::FieldTooSmall, "pencil eigenvalues lie outside the field");
}

}  // namespace

void check_invariants(const KleinModule& m) {
  if (m.S.rows() != m.S.cols() || m.T.rows() != m.T.cols() || m.S.rows() != m.T.rows()) {
    throw Error(ErrorKind::InvariantViolation, "action matrices have mismatched shapes");
  }
  if (!la::is_zero(m.S * m.S) || !la::is_zero(m.T * m.T)) {
    throw Error(ErrorKind::InvariantViolation, "(g-1)^2 != 0");
  }
  if (!la::is_zero(m.S * m.T - m.T * m.S)) throw Error(ErrorKind::InvariantViolation, "ST != TS");
}

KleinModule build_indecomposable(const IndecLabel& label, const FieldCtx& ctx) {
  switch (label.kind) {
    case IndecKind::Triv: return {zeros(1, 1), zeros(1, 1)};
    case IndecKind::Free: {
      // Basis 1, sigma, tau, sigma tau of kG; S, T are left multiplication by sigma-1, tau-1.
      GfMatrix s = zeros(4, 4);
      GfMatrix t = zeros(4, 4);
      s(1, 0) = s(1, 1) = Gf(1);
      s(3, 2) = s(3, 3) = Gf(1);
      s(0, 0) = s(0, 1) = Gf(1);
      s(2, 2) = s(2, 3) = Gf(1);
      t(2, 0) = t(2, 2) = Gf(1);
      t(0, 0) = t(0, 2) = Gf(1);
      t(3, 1) = t(3, 3) = Gf(1);
      t(1, 1) = t(1, 3) = Gf(1);
      return {s, t};
    }
    case IndecKind::N: {
      const int n = label.dim / 2;
      if (label.lambda.infinite) return {corner(jordan(n, ctx.zero())), corner(eye(n))};
      return {corner(eye(n)), corner(jordan(n, label.lambda.mu))};
    }
    case IndecKind::M1: {
      const int n = label.dim / 2;
      GfMatrix a = zeros(n, n + 1);
      GfMatrix b = zeros(n, n + 1);
      a.leftCols(n) = eye(n);
      b.rightCols(n) = eye(n);
      return {corner(a), corner(b)};
    }
    case IndecKind::M2: {
      const int n = label.dim / 2;
      GfMatrix a = zeros(n + 1, n);
      GfMatrix b = zeros(n + 1, n);
      a.topRows(n) = eye(n);
      b.bottomRows(n) = eye(n);
      return {corner(a), corner(b)};
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown module kind");
}

KleinModule direct_sum(const std::vector<KleinModule>& parts) {
  Index n = 0;
  for (const KleinModule& p : parts) n += p.dim();
  KleinModule out{zeros(n, n), zeros(n, n)};
  Index at = 0;
  for (const KleinModule& p : parts) {
    out.S.block(at, at, p.dim(), p.dim()) = p.S;
    out.T.block(at, at, p.dim(), p.dim()) = p.T;
    at += p.dim();
  }
  return out;
}

KleinModule build(const Decomposition& d, const FieldCtx& ctx) {
  std::vector<KleinModule> parts;
  for (const auto& [label, k] : d) {
    for (int i = 0; i < k; ++i) parts.push_back(build_indecomposable(label, ctx));
  }
  return direct_sum(parts);
}

KleinModule change_basis(const KleinModule& m, const GfMatrix& P) {
  const auto inv = la::inverse(P);
  if (!inv) throw Error(ErrorKind::InvalidArgument, "change of basis is singular");
  return {*inv * m.S * P, *inv * m.T * P};
}

bool operator==(const SubquotientDims& x, const SubquotientDims& y) {
  return x.d43 == y.d43 && x.d32 == y.d32 && x.d21 == y.d21 && x.d10 == y.d10;
}

SubquotientDims& operator+=(SubquotientDims& x, const SubquotientDims& y) {
  x.d43 += y.d43;
  x.d32 += y.d32;
  x.d21 += y.d21;
  x.d10 += y.d10;
  return x;
}

SubquotientDims filtration_subquotient_dims(const KleinModule& m, const ProjPoint& probe) {
  const Index n = m.dim();
  const GfMatrix f2 = probe.infinite ? m.S : GfMatrix(probe.mu * m.S + m.T);
  const Index u1 = n - rank_of(stack(m.S, m.T));
  const Index u2 = n - rank_of(f2);
  const Index u3 = n - rank_of(m.S * m.T);
  return {static_cast<int>(n - u3), static_cast<int>(u3 - u2), static_cast<int>(u2 - u1), static_cast<int>(u1)};
}

Decomposition decompose(const KleinModule& m, const FieldCtx& ctx) {
  check_invariants(m);
  Decomposition out;
  const Index n = m.dim();
  if (n == 0) return out;

  // Free summands: generators x with ST x independent span injective submodules.
  const GfMatrix st = m.S * m.T;
  std::vector<Index> piv;
  la::rref(st, &piv);
  GfMatrix S = m.S;
  GfMatrix T = m.T;
  if (!piv.empty()) {
    add(out, IndecLabel::free(), static_cast<int>(piv.size()));
    GfMatrix gens = zeros(n, static_cast<Index>(piv.size()));
    for (std::size_t i = 0; i < piv.size(); ++i) gens(piv[i], static_cast<Index>(i)) = Gf(1);
    GfMatrix f(n, 4 * gens.cols());
    f << gens, m.S * gens, m.T * gens, st * gens;
    const GfMatrix basis = hcat(f, la::complement(f, n));
    const Index rest = n - f.cols();
    S = coords(basis, m.S * basis).bottomRightCorner(rest, rest);
    T = coords(basis, m.T * basis).bottomRightCorner(rest, rest);
  }
  const Index q0 = S.rows();
  if (q0 == 0) return out;
  if (!la::is_zero(S * T)) throw Error(ErrorKind::InvariantViolation, "ST survives after removing free summands");

  // R = im S + im T is killed by S and T; on a complement C the module is the
  // pencil (S|C, T|C) : C -> R.
  const GfMatrix R = span_basis(hcat(S, T));
  const GfMatrix C = la::complement(R, q0);
  const GfMatrix rc = hcat(R, C);
  Pencil p{coords(rc, S * C).topRows(R.cols()), coords(rc, T * C).topRows(R.cols())};

  for (int eps : strip_column_blocks(p)) add(out, eps == 0 ? IndecLabel::triv() : IndecLabel::m1(2 * eps + 1));
  Pencil tp{p.A.transpose(), p.B.transpose()};
  for (int eta : strip_column_blocks(tp)) {
    if (eta == 0) throw Error(ErrorKind::InvariantViolation, "zero row block in the pencil");
    add(out, IndecLabel::m2(2 * eta + 1));
  }
  add_regular(out, tp, ctx);
  if (total_dim(out) != n) throw Error(ErrorKind::InvariantViolation, "decomposition does not account for every dimension");
  return out;
}

std::vector<ProjPoint> cohort(const ProjPoint& lambda, const FieldCtx& ctx) {
  const auto inv = [&](const ProjPoint& x) {
    if (x.infinite) return ProjPoint::finite(ctx.zero());
    if (x.mu.is_zero()) return ProjPoint::infinity();
    return ProjPoint::finite(inverse(Gf{x.mu.bits, &ctx}));
  };
  const auto plus1 = [&](const ProjPoint& x) {
    return x.infinite ? x : ProjPoint::finite(ctx.element(x.mu.bits ^ 1U));
  };
  const ProjPoint l = lambda.infinite ? lambda : ProjPoint::finite(ctx.element(lambda.mu.bits));
  // l/(1+l) = 1/(1 + 1/l) and (1+l)/l = 1 + 1/l.
  std::set<ProjPoint> s{l, inv(l), plus1(l), inv(plus1(l)), inv(plus1(inv(l))), plus1(inv(l))};
  return {s.begin(), s.end()};
}

GfMatrix action_minus_one(const KleinModule& m, Involution g) {
  switch (g) {
    case Involution::Sigma: return m.S;
    case Involution::Tau: return m.T;
    case Involution::SigmaTau: return m.S + m.T + m.S * m.T;
  }
  return m.S;
}

KleinModule relabel(const KleinModule& m, const std::array<Involution, 3>& xi) {
  std::set<Involution> img(xi.begin(), xi.end());
  if (img.size() != 3) throw Error(ErrorKind::NotAutomorphism, "relabeling is not a permutation of the involutions");
  // Automorphisms must respect sigma tau = xi(sigma) xi(tau); any permutation does.
  return {action_minus_one(m, xi[0]), action_minus_one(m, xi[1])};
}

KleinModule from_generator_pair(const GfMatrix& X1, const GfMatrix& X2, Involution rho1, Involution rho2) {
  if (rho1 == rho2) throw Error(ErrorKind::NotAutomorphism, "rho1 and rho2 must differ");
  const auto minus_one = [&](Involution g) -> GfMatrix {
    if (g == rho1) return X1;
    if (g == rho2) return X2;
    return X1 + X2 + X1 * X2;
  };
  return {minus_one(Involution::Sigma), minus_one(Involution::Tau)};
}

}  // namespace klein4
