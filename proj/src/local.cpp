#include "klein4/local.hpp"

namespace klein4 {

const char* to_string(BClass c) {
  switch (c) {
    case BClass::B1: return "B1";
    case BClass::B2: return "B2";
    case BClass::B3: return "B3";
  }
  return "?";
}

std::vector<Gf> solve_b_coeffs(const LaurentJet& p_jet, const LaurentJet& q_jet, int m, int M) {
  const Gf p0 = p_jet.at(-m);
  if (p0.is_zero() || q_jet.at(-M).is_zero()) {
    throw Error(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient of the local expansion vanishes");
  }
  const auto p = [&](int k) { return p_jet.at(-m + k); };
  const auto q = [&](int k) { return q_jet.at(-M + k); };
  const int top = m / 4;
  std::vector<Gf> b2;  // squares b_i^2
  std::vector<Gf> b;
  for (int j = 0; j <= top; ++j) {
    Gf acc = q(2 * j);
    for (int i = 0; i < j; ++i) acc += p(2 * (j - i)) * b2[static_cast<std::size_t>(i)];
    const Gf sq = acc / p0;
    b2.push_back(sq);
    b.push_back(sqrt(sq));
  }
  return b;
}

std::vector<Gf> solve_a_coeffs(const LaurentJet& p_jet, const LaurentJet& q_jet, const std::vector<Gf>& b, int m,
                               int M) {
  const auto p = [&](int k) { return p_jet.at(-m + k); };
  const auto q = [&](int k) { return q_jet.at(-M + k); };
  std::vector<Gf> a;
  for (int j = 0; j < mu2(m) - mu1(m); ++j) {
    Gf acc = q(2 * j + 1);
    for (int i2 = 0; i2 <= j && i2 < static_cast<int>(b.size()); ++i2) {
      acc += p(2 * (j - i2) + 1) * square(b[static_cast<std::size_t>(i2)]);
    }
    a.push_back(sqrt(acc));
  }
  return a;
}

const RatFun& local_p(const CoverAnalysis& a, const BranchPoint& bp) {
  switch (bp.u_role) {
    case Role::U: return a.sp.reduced;
    case Role::V: return a.sq.reduced;
    case Role::UV: return a.sr.reduced;
  }
  return a.sp.reduced;
}

const RatFun& local_q(const CoverAnalysis& a, const BranchPoint& bp) {
  return bp.v_role == Role::U ? a.sp.reduced : a.sq.reduced;
}

namespace {

LaurentJet exact_jet(const ProjPoint& y, int lead, const std::vector<Gf>& c) {
  LaurentJet j;
  j.point = y;
  j.lead = lead;
  j.coeffs = c;
  j.precision = lead + static_cast<int>(c.size());
  while (!j.coeffs.empty() && j.coeffs.front().is_zero()) {
    j.coeffs.erase(j.coeffs.begin());
    ++j.lead;
  }
  return j;
}

RatFun laurent_poly(const ProjPoint& y, int lead, const std::vector<Gf>& c, const FieldCtx* ctx) {
  const RatFun pi = uniformizer(y, ctx);
  RatFun acc(ctx);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c[i].is_zero()) acc += c[i] * pow(pi, lead + static_cast<int>(i));
  }
  return acc;
}

}  // namespace

LocalData classify(const CoverAnalysis& an, const BranchPoint& bp) {
  const FieldCtx* ctx = an.ctx();
  const int m = bp.m;
  const int M = bp.M;
  LocalData ld;
  ld.y = bp.y;
  ld.nu = bp.nu();
  const int extra = 2 * (m / 4) + 2;
  ld.p_jet = laurent_at(local_p(an, bp), bp.y, -m + extra);
  ld.q_jet = laurent_at(local_q(an, bp), bp.y, -M + extra);
  if (ld.p_jet.order() != -m || ld.q_jet.order() != -M) {
    throw Error(ErrorKind::InvariantViolation, "local expansions do not have the expected pole orders");
  }
  ld.b = solve_b_coeffs(ld.p_jet, ld.q_jet, m, M);
  ld.a = solve_a_coeffs(ld.p_jet, ld.q_jet, ld.b, m, M);
  ld.beta_tilde = exact_jet(bp.y, -ld.nu, ld.b);
  ld.alpha_tilde = exact_jet(bp.y, (1 - M) / 2, ld.a);

  switch (bp.tag) {
    case CaseTag::I: {
      const Gf b0 = ld.b.front();
      if (b0.is_zero() || b0.is_one()) {
        throw Error(ErrorKind::InvalidLambda, "b_0 in {0, 1} at " + to_string(bp.y, *ctx));
      }
      Gf lam = b0;
      lam.ctx = ctx;
      ld.lambda = ProjPoint::finite(lam);
      ld.delta = 0;
      for (std::size_t i = 1; i < ld.b.size(); ++i) {
        if (!ld.b[i].is_zero()) {
          ld.delta = static_cast<int>(i);
          break;
        }
      }
      ld.b_class = ld.delta == 0 ? BClass::B1 : BClass::B2;
      break;
    }
    case CaseTag::IIa: ld.lambda = ProjPoint::infinity(); break;
    case CaseTag::IIb: ld.lambda = ProjPoint::finite(ctx->zero()); break;
    case CaseTag::IIc: ld.lambda = ProjPoint::finite(ctx->one()); break;
  }
  if (bp.tag != CaseTag::I) {
    ld.delta = -1;
    ld.b_class = BClass::B3;
  }
  return ld;
}

std::vector<LocalData> classify_all(const CoverAnalysis& a) {
  std::vector<LocalData> out;
  out.reserve(a.branch.size());
  for (const BranchPoint& bp : a.branch) out.push_back(classify(a, bp));
  return out;
}

RatFun beta_partial(const LocalData& ld, int j, const FieldCtx* ctx) {
  const std::size_t n = std::min(ld.b.size(), static_cast<std::size_t>(std::max(j + 1, 0)));
  return laurent_poly(ld.y, -ld.nu, std::vector<Gf>(ld.b.begin(), ld.b.begin() + static_cast<std::ptrdiff_t>(n)), ctx);
}

RatFun alpha_tilde(const LocalData& ld, const FieldCtx* ctx) {
  return laurent_poly(ld.y, ld.alpha_tilde.lead, ld.alpha_tilde.coeffs, ctx);
}

}  // namespace klein4
