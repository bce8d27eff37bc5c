#include "klein4/cover.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace klein4 {

const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::I: return "I";
    case CaseTag::IIa: return "IIa";
    case CaseTag::IIb: return "IIb";
    case CaseTag::IIc: return "IIc";
  }
  return "?";
}

CoverSpec CoverSpec::make(std::shared_ptr<const FieldCtx> ctx, const RatFun& p, const RatFun& q) {
  return {std::move(ctx), p, q, p + q};
}

ProjPoint Mobius::apply(const ProjPoint& y) const {
  if (y.infinite) return c.is_zero() ? ProjPoint::infinity() : ProjPoint::finite(a / c);
  const Gf den = c * y.mu + d;
  if (den.is_zero()) return ProjPoint::infinity();
  return ProjPoint::finite((a * y.mu + b) / den);
}

Mobius Mobius::then(const Gf& a2, const Gf& b2, const Gf& c2, const Gf& d2) const {
  return {a * a2 + b * c2, a * b2 + b * d2, c * a2 + d * c2, c * b2 + d * d2};
}

namespace {

struct Classified {
  StandardForm sp;
  StandardForm sq;
  StandardForm sr;
  std::vector<BranchPoint> branch;
};

Classified classify_points(const CoverSpec& spec) {
  Classified out{standard_form(spec.p), standard_form(spec.q), standard_form(spec.r), {}};
  const std::pair<const char*, const StandardForm*> named[] = {{"p", &out.sp}, {"q", &out.sq}, {"p+q", &out.sr}};
  for (const auto& [name, sf] : named) {
    if (sf->reduced.is_constant()) {
      throw Error(ErrorKind::DegenerateCover, std::string(name) + " is of the form s^2 - s");
    }
  }
  std::set<ProjPoint> pts;
  for (const auto& [name, sf] : named) {
    for (const auto& [y, o] : sf->pole_orders) pts.insert(y);
  }
  for (const ProjPoint& y : pts) {
    BranchPoint bp;
    bp.y = y;
    bp.original = y;
    const auto order = [&](const StandardForm& sf) {
      auto it = sf.pole_orders.find(y);
      return it == sf.pole_orders.end() ? 0 : it->second;
    };
    bp.m_p = order(out.sp);
    bp.m_q = order(out.sq);
    bp.m_r = order(out.sr);
    const std::string where = "at " + to_string(y, *spec.ctx);
    if (bp.m_p == 0 || bp.m_q == 0 || bp.m_r == 0) {
      throw Error(ErrorKind::NotTotallyRamified, "only part of p, q, p+q has a pole " + where);
    }
    if (bp.m_p % 2 == 0 || bp.m_q % 2 == 0 || bp.m_r % 2 == 0) {
      throw Error(ErrorKind::InvariantViolation, "even pole order after reduction " + where);
    }
    bp.m = std::min({bp.m_p, bp.m_q, bp.m_r});
    bp.M = std::max({bp.m_p, bp.m_q, bp.m_r});
    if (bp.m == bp.M) {
      bp.tag = CaseTag::I;
    } else if (bp.m_p == bp.m && bp.m_q == bp.M && bp.m_r == bp.M) {
      bp.tag = CaseTag::IIa;
    } else if (bp.m_q == bp.m && bp.m_p == bp.M && bp.m_r == bp.M) {
      bp.tag = CaseTag::IIb;
      bp.u_role = Role::V;
      bp.v_role = Role::U;
    } else if (bp.m_r == bp.m && bp.m_p == bp.M && bp.m_q == bp.M) {
      bp.tag = CaseTag::IIc;
      bp.u_role = Role::UV;
    } else {
      throw Error(ErrorKind::InvariantViolation, "pole orders do not match any ramification case " + where);
    }
    bp.different_exp = 3 * (bp.m + 1) + 2 * (bp.M - bp.m);
    out.branch.push_back(bp);
  }
  if (out.branch.empty()) throw Error(ErrorKind::NotRamified, "the cover has no branch points");
  return out;
}

CoverSpec substitute(const CoverSpec& s, const Gf& a, const Gf& b, const Gf& c, const Gf& d) {
  return CoverSpec::make(s.ctx, substitute_mobius(s.p, a, b, c, d), substitute_mobius(s.q, a, b, c, d));
}

}  // namespace

CoverAnalysis analyze(const CoverSpec& input) {
  const FieldCtx* ctx = input.ctx.get();
  CoverAnalysis out;
  out.input = input;
  out.spec = input;
  Classified cl = classify_points(input);

  const auto has = [&](const ProjPoint& y) {
    return std::any_of(cl.branch.begin(), cl.branch.end(), [&](const BranchPoint& bp) { return bp.y == y; });
  };
  if (!has(ProjPoint::infinity())) {
    // Send the branch point with the largest m (earliest on ties) to infinity: t = y* + 1/t'.
    const BranchPoint* best = &cl.branch.front();
    for (const BranchPoint& bp : cl.branch) {
      if (bp.m > best->m) best = &bp;
    }
    const Gf ystar{best->y.mu.bits, ctx};
    out.map = out.map.then(ystar, ctx->one(), ctx->one(), ctx->zero());
    out.spec = substitute(out.spec, ystar, ctx->one(), ctx->one(), ctx->zero());
    cl = classify_points(out.spec);
  }
  if (has(ProjPoint::finite(ctx->zero()))) {
    std::uint64_t bits = 1;
    for (; bits <= ctx->mask(); ++bits) {
      if (!has(ProjPoint::finite(ctx->element(bits)))) break;
    }
    if (bits > ctx->mask()) throw Error(ErrorKind::FieldTooSmall, "every finite point is a branch point");
    const Gf mu0 = ctx->element(bits);
    out.map = out.map.then(ctx->one(), mu0, ctx->zero(), ctx->one());
    out.spec = substitute(out.spec, ctx->one(), mu0, ctx->zero(), ctx->one());
    cl = classify_points(out.spec);
  }

  out.sp = std::move(cl.sp);
  out.sq = std::move(cl.sq);
  out.sr = std::move(cl.sr);
  out.e = out.sp.s + out.sq.s + out.sr.s;
  out.branch = std::move(cl.branch);
  int total = 0;
  for (BranchPoint& bp : out.branch) {
    bp.original = out.map.apply(bp.y);
    total += bp.different_exp;
  }
  out.genus_X = -3 + total / 2;
  return out;
}

bool katz_gabber_check(const CoverAnalysis& a) { return a.branch.size() == 1; }

}  // namespace klein4
