#include "klein4/predict.hpp"

#include <algorithm>
#include <set>

namespace klein4 {

namespace {

bool is_special(const ProjPoint& l) { return l.infinite || l.mu.is_zero() || l.mu.is_one(); }

int mu21(int m) { return mu2(m) - mu1(m); }

}  // namespace

CaseTag BranchInvariants::tag() const {
  if (delta >= 0) return CaseTag::I;
  if (lambda.infinite) return CaseTag::IIa;
  return lambda.mu.is_zero() ? CaseTag::IIb : CaseTag::IIc;
}

BranchInvariants invariants_of(const BranchPoint& bp, const LocalData& ld) {
  return {bp.m, bp.M, ld.delta, ld.lambda};
}

std::vector<BranchInvariants> invariants_of(const CoverAnalysis& a, const std::vector<LocalData>& locals) {
  std::vector<BranchInvariants> out;
  for (std::size_t i = 0; i < a.branch.size(); ++i) out.push_back(invariants_of(a.branch[i], locals[i]));
  return out;
}

void validate(const BranchInvariants& b) {
  const auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); };
  if (b.m < 1 || b.m % 2 == 0 || b.M % 2 == 0 || b.M < b.m) fail("m, M must be odd with 1 <= m <= M");
  if (b.delta < -1 || b.delta > b.m / 4) fail("delta out of range");
  if (b.delta == -1) {
    if (b.M == b.m) fail("delta = -1 needs M > m");
    if (!is_special(b.lambda)) fail("delta = -1 needs lambda in {0, 1, inf}");
  } else {
    if (b.M != b.m) fail("delta >= 0 needs M = m");
    if (is_special(b.lambda)) fail("delta >= 0 needs lambda outside {0, 1, inf}");
  }
}

ProbeDirection ProbeDirection::of(const ProjPoint& lambda) {
  if (lambda.infinite) return {Gf(1), Gf(0)};
  return {lambda.mu, Gf(1)};
}

ProbeDirection ProbeDirection::switched(CaseTag tag) const {
  switch (tag) {
    case CaseTag::I:
    case CaseTag::IIa: return *this;
    case CaseTag::IIb: return {b, a};
    case CaseTag::IIc: return {a, a + b};
  }
  return *this;
}

bool operator==(const DivisorCoeffs& x, const DivisorCoeffs& y) {
  return x.d0 == y.d0 && x.d1 == y.d1 && x.d2 == y.d2 && x.d3 == y.d3;
}

DivisorCoeffs divisor_coeffs(const BranchInvariants& y, const ProjPoint& probe) {
  const int m = y.m;
  const int nu = y.nu();
  const ProbeDirection cd = ProbeDirection::of(probe).switched(y.tag());
  const bool on_lambda = y.delta >= 0 && cd.a == cd.b * y.lambda.mu;
  DivisorCoeffs d{mu3(m) + nu, mu1(m), mu2(m) + nu, 0};
  if (y.delta == 0 && on_lambda) {
    d.d1 = mu2(m);
    d.d2 = mu1(m);
  } else if (y.delta > 0 && on_lambda) {
    d.d1 = mu1(m) + y.delta;
    d.d2 = mu2(m) - y.delta;
  } else if (y.delta == -1 && cd.b.is_zero()) {
    d.d1 = mu1(m) + nu;
    d.d2 = mu2(m);
  }
  return d;
}

bool operator==(const FiltrationDims& x, const FiltrationDims& y) {
  return x.r0 == y.r0 && x.r1 == y.r1 && x.r2 == y.r2 && x.r3 == y.r3;
}

FiltrationDims filtration_dims(const std::vector<BranchInvariants>& ys, const ProjPoint& lambda) {
  FiltrationDims r;
  const bool special = is_special(lambda);
  for (const BranchInvariants& y : ys) {
    const int m = y.m;
    const int nu = y.nu();
    r.r0 += mu3(m) + nu;
    const bool here = y.lambda == lambda;
    if (!special && here && y.delta == 0) {
      r.r1 += mu2(m);
      r.r2 += mu1(m);
    } else if (!special && here && y.delta > 0) {
      r.r1 += mu1(m) + y.delta;
      r.r2 += mu2(m) - y.delta;
    } else if (special && here && y.delta == -1) {
      r.r1 += mu1(m) + nu;
      r.r2 += mu2(m);
    } else {
      r.r1 += mu1(m);
      r.r2 += mu2(m) + nu;
    }
  }
  return r;
}

EpsilonConstraints epsilon_constraints(const std::vector<BranchInvariants>& ys, int gY) {
  EpsilonConstraints e;
  e.eps5 = gY;
  e.eps2 = -1;
  std::map<ProjPoint, bool> may_drop;
  for (const BranchInvariants& y : ys) {
    e.eps2 += mu1(y.m);
    e.eps34 += mu3(y.m) - mu2(y.m);
    int& v = e.eps1[y.lambda];
    auto [it, fresh] = may_drop.emplace(y.lambda, true);
    switch (y.b_class()) {
      case BClass::B1:
        v += mu21(y.m);
        if (y.m != 1) it->second = false;
        break;
      case BClass::B2:
        v += y.delta;
        it->second = false;
        break;
      case BClass::B3:
        v += y.nu();
        it->second = false;
        break;
    }
  }
  for (const auto& [l, ok] : may_drop) {
    if (ok) e.droppable.push_back(l);
  }
  return e;
}

EpsilonValues extract_epsilons(const Decomposition& d) {
  EpsilonValues v;
  for (const auto& [l, k] : d) {
    switch (l.kind) {
      case IndecKind::N: v.eps1[l.lambda] += k; break;
      case IndecKind::M1: v.eps2 += k; break;
      case IndecKind::M2: v.eps3 += k; break;
      case IndecKind::Triv: v.eps4 += k; break;
      case IndecKind::Free: v.eps5 += k; break;
    }
  }
  return v;
}

std::vector<std::string> check_epsilons(const Decomposition& d, const std::vector<BranchInvariants>& ys, int gY,
                                        const FieldCtx& ctx) {
  std::vector<std::string> bad;
  const EpsilonValues v = extract_epsilons(d);
  const EpsilonConstraints c = epsilon_constraints(ys, gY);
  for (const auto& [l, k] : v.eps1) {
    if (!c.eps1.contains(l)) bad.push_back("lambda " + to_string(l, ctx) + " occurs but is not a branch value");
  }
  for (const auto& [l, want] : c.eps1) {
    const auto it = v.eps1.find(l);
    const int got = it == v.eps1.end() ? 0 : it->second;
    if (got != want) {
      bad.push_back("eps1 at " + to_string(l, ctx) + ": " + std::to_string(got) + " != " + std::to_string(want));
    }
    if (got == 0 && std::find(c.droppable.begin(), c.droppable.end(), l) == c.droppable.end()) {
      bad.push_back("lambda " + to_string(l, ctx) + " is missing but cannot be dropped");
    }
  }
  if (v.eps2 != c.eps2) bad.push_back("eps2: " + std::to_string(v.eps2) + " != " + std::to_string(c.eps2));
  if (v.eps3 + v.eps4 != c.eps34) {
    bad.push_back("eps3 + eps4: " + std::to_string(v.eps3 + v.eps4) + " != " + std::to_string(c.eps34));
  }
  if (v.eps5 != c.eps5) bad.push_back("eps5: " + std::to_string(v.eps5) + " != " + std::to_string(c.eps5));
  return bad;
}

SpecialResult decompose_special(const std::vector<BranchInvariants>& ys, int gY) {
  SpecialResult r;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const BranchInvariants& y = ys[i];
    const bool ok = y.delta == 0 || (y.delta >= 1 && y.delta == mu21(y.m)) || (y.delta == -1 && y.m == 1);
    if (!ok) r.offending.push_back(i);
  }
  if (!r.offending.empty()) return r;
  Decomposition d;
  int b = -1;
  int c = 0;
  for (const BranchInvariants& y : ys) {
    add(d, IndecLabel::n(2, y.lambda), mu21(y.m) + y.nu());
    b += mu1(y.m);
    c += mu3(y.m) - mu2(y.m);
  }
  add(d, IndecLabel::m1(3), b);
  add(d, IndecLabel::triv(), c);
  add(d, IndecLabel::free(), gY);
  r.decomposition = std::move(d);
  return r;
}

EllData ell_data(const BranchInvariants& y) {
  if (y.delta == 0) return {1, mu21(y.m), 0};
  const int divisor = y.delta > 0 ? y.delta : y.nu();
  const int x = y.delta > 0 ? mu21(y.m) : mu21(y.m) + y.nu();
  // x = (l - 1) divisor + a1 with 1 <= a1 <= divisor.
  const int l1 = (x - 1) / divisor;
  const int a1 = x - l1 * divisor;
  return {l1 + 1, a1, divisor - a1};
}

Decomposition decompose_p1(const std::vector<BranchInvariants>& ys, int gY) {
  if (gY != 0) throw Error(ErrorKind::NotP1Base, "the complete decomposition needs a rational base curve");
  Decomposition d;
  int b = -1;
  int c = 0;
  for (const BranchInvariants& y : ys) {
    const EllData e = ell_data(y);
    add(d, IndecLabel::n(2 * e.ell, y.lambda), e.a1);
    if (e.ell > 1) add(d, IndecLabel::n(2 * (e.ell - 1), y.lambda), e.a2);
    b += mu1(y.m);
    c += mu3(y.m) - mu2(y.m);
  }
  add(d, IndecLabel::m1(3), b);
  add(d, IndecLabel::triv(), c);
  return d;
}

SumEllResult check_sum_ell_criterion(const std::vector<BranchInvariants>& ys, int ell_sum) {
  SumEllResult r;
  int c = 0;
  for (const BranchInvariants& y : ys) {
    r.bound += mu21(y.m) + y.nu();
    c += mu3(y.m) - mu2(y.m);
  }
  r.holds = ell_sum >= r.bound;
  if (r.holds) r.eps4 = c;
  return r;
}

bool small_ell_predicate(const BranchInvariants& y) {
  return y.delta == 0 || (y.delta >= 1 && y.m % 4 == 1 && y.delta == y.m / 4) || (y.delta == -1 && y.m == 1);
}

std::vector<ProjPoint> canonical_probes(const std::vector<BranchInvariants>& ys, const FieldCtx& ctx) {
  std::set<ProjPoint> s{ProjPoint::infinity(), ProjPoint::finite(ctx.zero()), ProjPoint::finite(ctx.one())};
  for (const BranchInvariants& y : ys) s.insert(y.lambda);
  int fresh = 0;
  for (std::uint64_t bits = 2; bits <= ctx.mask() && fresh < 2; ++bits) {
    const ProjPoint p = ProjPoint::finite(ctx.element(bits));
    if (s.insert(p).second) ++fresh;
  }
  return {s.begin(), s.end()};
}

}  // namespace klein4
