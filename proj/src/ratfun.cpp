#include "klein4/ratfun.hpp"

#include <algorithm>

namespace klein4 {

bool operator==(const ProjPoint& a, const ProjPoint& b) {
  return a.infinite == b.infinite && (a.infinite || a.mu == b.mu);
}

bool operator<(const ProjPoint& a, const ProjPoint& b) {
  if (a.infinite != b.infinite) return a.infinite;
  return !a.infinite && a.mu < b.mu;
}

RatFun::RatFun(const FieldCtx* ctx) : num_(ctx), den_(Poly::constant(Gf(1), ctx)) {}

RatFun::RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::DivisionByZeroPoly, "zero denominator");
  canonicalize();
}

RatFun::RatFun(const Poly& num) : num_(num), den_(Poly::constant(Gf(1), num.ctx())) {}

RatFun RatFun::constant(const Gf& c, const FieldCtx* ctx) { return RatFun(Poly::constant(c, ctx)); }

RatFun RatFun::t(const FieldCtx* ctx) { return RatFun(Poly::monomial(Gf(1), 1, ctx)); }

void RatFun::canonicalize() {
  const FieldCtx* c = ctx();
  if (num_.is_zero()) {
    num_ = Poly(c);
    den_ = Poly::constant(Gf(1), c);
    return;
  }
  const Poly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  const Gf inv = inverse(den_.lead());
  num_ *= inv;
  den_ *= inv;
}

RatFun& RatFun::operator+=(const RatFun& o) {
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

RatFun& RatFun::operator*=(const RatFun& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  canonicalize();
  return *this;
}

RatFun& RatFun::operator/=(const RatFun& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero function");
  num_ *= o.den_;
  den_ *= o.num_;
  canonicalize();
  return *this;
}

bool operator==(const RatFun& a, const RatFun& b) { return a.num() == b.num() && a.den() == b.den(); }

RatFun operator*(const Gf& c, const RatFun& f) { return RatFun(f.num() * c, f.den()); }

RatFun pow(const RatFun& f, int e) {
  if (e < 0) return pow(RatFun::constant(Gf(1), f.ctx()) / f, -e);
  return RatFun(pow(f.num(), e), pow(f.den(), e));
}

RatFun square(const RatFun& f) { return pow(f, 2); }

namespace {

// sum_i p_i A^i C^(deg - i)
Poly homogenize(const Poly& p, int deg, const Poly& a, const Poly& c) {
  Poly acc(p.ctx());
  for (int i = 0; i <= p.degree(); ++i) {
    if (p.coeff(i).is_zero()) continue;
    acc += p.coeff(i) * (pow(a, i) * pow(c, deg - i));
  }
  return acc;
}

}  // namespace

RatFun substitute_mobius(const RatFun& f, const Gf& a, const Gf& b, const Gf& c, const Gf& d) {
  if ((a * d + b * c).is_zero()) throw Error(ErrorKind::InvalidArgument, "degenerate Mobius map");
  const FieldCtx* ctx = f.ctx();
  const Poly num_map({b, a}, ctx);
  const Poly den_map({d, c}, ctx);
  const int dn = f.num().degree();
  const int dd = f.den().degree();
  if (f.is_zero()) return f;
  return RatFun(homogenize(f.num(), dn, num_map, den_map) * pow(den_map, dd),
                homogenize(f.den(), dd, num_map, den_map) * pow(den_map, dn));
}

int ord_at(const RatFun& f, const ProjPoint& y) {
  if (f.is_zero()) return kInfiniteOrder;
  if (y.infinite) return f.den().degree() - f.num().degree();
  return multiplicity(f.num(), y.mu) - multiplicity(f.den(), y.mu);
}

RatFun uniformizer(const ProjPoint& y, const FieldCtx* ctx) {
  if (y.infinite) return RatFun(Poly::constant(Gf(1), ctx), Poly::monomial(Gf(1), 1, ctx));
  return RatFun(Poly::linear(y.mu, ctx));
}

Gf LaurentJet::at(int i) const {
  const int k = i - lead;
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return Gf(0);
  return coeffs[static_cast<std::size_t>(k)];
}

namespace {

// Drop leading zeros and anything at or beyond the precision.
void normalize(LaurentJet& j) {
  if (j.lead >= j.precision) {
    j.coeffs.clear();
    j.lead = j.precision;
    return;
  }
  j.coeffs.resize(std::min(j.coeffs.size(), static_cast<std::size_t>(j.precision - j.lead)), Gf(0));
  std::size_t z = 0;
  while (z < j.coeffs.size() && j.coeffs[z].is_zero()) ++z;
  if (z == j.coeffs.size()) {
    j.coeffs.clear();
    j.lead = j.precision;
    return;
  }
  j.coeffs.erase(j.coeffs.begin(), j.coeffs.begin() + static_cast<std::ptrdiff_t>(z));
  j.lead += static_cast<int>(z);
  while (!j.coeffs.empty() && j.coeffs.back().is_zero()) j.coeffs.pop_back();
}

// First `count` coefficients of the power series num/den, den(0) != 0.
std::vector<Gf> series_divide(const Poly& num, const Poly& den, int count) {
  std::vector<Gf> out(static_cast<std::size_t>(std::max(count, 0)), Gf(0));
  const Gf inv0 = inverse(den.coeff(0));
  for (int i = 0; i < count; ++i) {
    Gf acc = num.coeff(i);
    for (int j = 1; j <= std::min(i, den.degree()); ++j) acc += den.coeff(j) * out[static_cast<std::size_t>(i - j)];
    out[static_cast<std::size_t>(i)] = acc * inv0;
  }
  return out;
}

// Split p = pi^k p1 with p1(0) != 0.
int strip_low(Poly& p) {
  int k = 0;
  while (k <= p.degree() && p.coeff(k).is_zero()) ++k;
  if (k > 0) {
    std::vector<Gf> c(p.coeffs().begin() + k, p.coeffs().end());
    p = Poly(std::move(c), p.ctx());
  }
  return k;
}

}  // namespace

LaurentJet laurent_at(const RatFun& f, const ProjPoint& y, int prec) {
  LaurentJet j;
  j.point = y;
  j.precision = prec;
  if (f.is_zero()) {
    j.lead = prec;
    return j;
  }
  Poly n(f.ctx());
  Poly d(f.ctx());
  int lead = 0;
  if (y.infinite) {
    n = reverse(f.num(), f.num().degree());
    d = reverse(f.den(), f.den().degree());
    lead = f.den().degree() - f.num().degree();
  } else {
    n = taylor_shift(f.num(), y.mu);
    d = taylor_shift(f.den(), y.mu);
    lead = strip_low(n) - strip_low(d);
  }
  j.lead = lead;
  j.coeffs = series_divide(n, d, prec - lead);
  normalize(j);
  return j;
}

LaurentJet operator+(const LaurentJet& a, const LaurentJet& b) {
  LaurentJet r;
  r.point = a.point;
  r.precision = std::min(a.precision, b.precision);
  r.lead = std::min(a.lead, b.lead);
  for (int i = r.lead; i < r.precision; ++i) r.coeffs.push_back(a.at(i) + b.at(i));
  normalize(r);
  return r;
}

LaurentJet operator*(const LaurentJet& a, const LaurentJet& b) {
  LaurentJet r;
  r.point = a.point;
  r.precision = std::min(a.precision + b.order(), b.precision + a.order());
  r.lead = a.lead + b.lead;
  if (a.is_zero() || b.is_zero()) {
    r.lead = r.precision;
    return r;
  }
  const int count = r.precision - r.lead;
  if (count <= 0) {
    normalize(r);
    return r;
  }
  r.coeffs.assign(static_cast<std::size_t>(count), Gf(0));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t k = 0; k < b.coeffs.size() && static_cast<int>(i + k) < count; ++k) {
      r.coeffs[i + k] += a.coeffs[i] * b.coeffs[k];
    }
  }
  normalize(r);
  return r;
}

RatFun to_ratfun(const LaurentJet& j, const FieldCtx* ctx) {
  const RatFun pi = uniformizer(j.point, ctx);
  RatFun acc(ctx);
  for (std::size_t i = 0; i < j.coeffs.size(); ++i) {
    if (j.coeffs[i].is_zero()) continue;
    acc += j.coeffs[i] * pow(pi, j.lead + static_cast<int>(i));
  }
  return acc;
}

LaurentJet jet_monomial(const ProjPoint& y, const Gf& c, int k, int prec) {
  LaurentJet j;
  j.point = y;
  j.precision = prec;
  j.lead = k;
  j.coeffs = {c};
  normalize(j);
  return j;
}

PartialFractions partial_fractions(const RatFun& f) {
  PartialFractions pf;
  auto [q, r] = divmod(f.num(), f.den());
  pf.polynomial = q;
  if (r.is_zero()) return pf;
  const RatFun proper(r, f.den());
  for (const auto& [mu, e] : split_linear(f.den())) {
    const LaurentJet j = laurent_at(proper, ProjPoint::finite(mu), 0);
    PrincipalPart pp{mu, std::vector<Gf>(static_cast<std::size_t>(e), Gf(0))};
    for (int k = 1; k <= e; ++k) pp.coeffs[static_cast<std::size_t>(k - 1)] = j.at(-k);
    pf.poles.push_back(std::move(pp));
  }
  return pf;
}

RatFun to_ratfun(const PartialFractions& pf, const FieldCtx* ctx) {
  RatFun acc(pf.polynomial);
  if (acc.ctx() == nullptr) acc = RatFun(ctx);
  for (const auto& pp : pf.poles) {
    const RatFun inv_pi = RatFun(Poly::constant(Gf(1), ctx), Poly::linear(pp.mu, ctx));
    for (std::size_t k = 0; k < pp.coeffs.size(); ++k) {
      if (!pp.coeffs[k].is_zero()) acc += pp.coeffs[k] * pow(inv_pi, static_cast<int>(k) + 1);
    }
  }
  return acc;
}

std::map<ProjPoint, int> poles(const RatFun& f) {
  std::map<ProjPoint, int> out;
  if (f.is_zero()) return out;
  const int inf = f.num().degree() - f.den().degree();
  if (inf > 0) out[ProjPoint::infinity()] = inf;
  for (const auto& [mu, e] : split_linear(f.den())) out[ProjPoint::finite(mu)] = e;
  return out;
}

std::string to_string(const RatFun& f) {
  if (f.den().is_one()) return to_string(f.num());
  return "(" + to_string(f.num()) + ")/(" + to_string(f.den()) + ")";
}

std::string to_string(const ProjPoint& y, const FieldCtx& ctx) {
  if (y.infinite) return "inf";
  return ctx.power_literal(y.mu);
}

}  // namespace klein4
