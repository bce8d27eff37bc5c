#include "klein4/poly.hpp"

#include <algorithm>
#include <random>

namespace klein4 {

Poly::Poly(std::vector<Gf> coeffs, const FieldCtx* ctx) : c_(std::move(coeffs)), ctx_(ctx) { trim(); }

Poly Poly::constant(const Gf& c, const FieldCtx* ctx) { return Poly({c}, ctx); }

Poly Poly::monomial(const Gf& c, int degree, const FieldCtx* ctx) {
  if (c.is_zero()) return Poly(ctx);
  std::vector<Gf> v(static_cast<std::size_t>(degree) + 1, Gf(0));
  v.back() = c;
  return Poly(std::move(v), ctx);
}

Poly Poly::linear(const Gf& mu, const FieldCtx* ctx) { return Poly({mu, Gf(1)}, ctx); }

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  if (ctx_ == nullptr) {
    for (const Gf& g : c_) {
      if (g.ctx != nullptr) ctx_ = g.ctx;
    }
  }
}

Gf Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return {0, ctx_};
  return c_[static_cast<std::size_t>(i)];
}

Gf Poly::operator()(const Gf& x) const {
  Gf acc{0, ctx_};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly& Poly::operator+=(const Poly& o) {
  if (ctx_ == nullptr) ctx_ = o.ctx_;
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Gf(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (ctx_ == nullptr) ctx_ = o.ctx_;
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<Gf> r(c_.size() + o.c_.size() - 1, Gf(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Gf& c) {
  for (Gf& x : c_) x *= c;
  trim();
  return *this;
}

bool operator==(const Poly& a, const Poly& b) { return a.coeffs() == b.coeffs(); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZeroPoly, "polynomial division by zero");
  const FieldCtx* ctx = a.ctx() != nullptr ? a.ctx() : b.ctx();
  std::vector<Gf> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(ctx), a};
  std::vector<Gf> q(static_cast<std::size_t>(a.degree() - db + 1), Gf(0));
  const Gf inv = inverse(b.lead());
  for (int i = a.degree(); i >= db; --i) {
    const Gf c = r[static_cast<std::size_t>(i)] * inv;
    if (c.is_zero()) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] += c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {Poly(std::move(q), ctx), Poly(std::move(r), ctx)};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly monic(const Poly& a) {
  if (a.is_zero()) return a;
  return a * inverse(a.lead());
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a;
  Poly y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Poly derivative(const Poly& a) {
  std::vector<Gf> d;
  for (int i = 1; i <= a.degree(); ++i) d.push_back((i % 2 == 1) ? a.coeff(i) : Gf(0));
  return Poly(std::move(d), a.ctx());
}

Poly pow(const Poly& a, int e) {
  Poly r = Poly::constant(Gf(1), a.ctx());
  Poly b = a;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e > 0) b *= b;
  }
  return r;
}

Poly powmod(const Poly& a, std::uint64_t e, const Poly& m) {
  Poly r = Poly::constant(Gf(1), a.ctx()) % m;
  Poly b = a % m;
  while (e != 0) {
    if (e & 1U) r = (r * b) % m;
    e >>= 1;
    if (e != 0) b = (b * b) % m;
  }
  return r;
}

namespace {

// a^(2^k) mod m, by k squarings.
Poly frobenius_power(const Poly& a, int k, const Poly& m) {
  Poly r = a % m;
  for (int i = 0; i < k; ++i) r = (r * r) % m;
  return r;
}

Poly tvar(const FieldCtx* ctx) { return Poly::monomial(Gf(1), 1, ctx); }

// Sum_{i<k} (c t)^(2^i) mod m: the F_{2^k} -> F_2 trace of c t in F_q[t]/(m).
Poly trace_map(const Poly& base, int k, const Poly& m) {
  Poly term = base % m;
  Poly acc = term;
  for (int i = 1; i < k; ++i) {
    term = (term * term) % m;
    acc += term;
  }
  return acc;
}

void split_roots(const Poly& g, std::vector<Gf>& out) {
  if (g.degree() <= 0) return;
  if (g.degree() == 1) {
    out.push_back(g.coeff(0) / g.coeff(1));
    return;
  }
  const FieldCtx* ctx = g.ctx();
  const int n = ctx->degree();
  for (int i = 0; i < n; ++i) {
    const Poly tr = trace_map(Poly::monomial(ctx->element(std::uint64_t{1} << i), 1, ctx), n, g);
    const Poly h = gcd(g, tr);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      split_roots(h, out);
      split_roots(g / h, out);
      return;
    }
  }
  throw Error(ErrorKind::InvariantViolation, "root splitting failed on " + to_string(g));
}

}  // namespace

Poly taylor_shift(const Poly& a, const Gf& mu) {
  // Horner in the ring: a(t + mu) = (...(a_d (t+mu) + a_{d-1})(t+mu) + ...).
  const Poly lin = Poly::linear(mu, a.ctx());
  Poly r(a.ctx());
  for (int i = a.degree(); i >= 0; --i) r = r * lin + Poly::constant(a.coeff(i), a.ctx());
  return r;
}

Poly reverse(const Poly& a, int d) {
  std::vector<Gf> v(static_cast<std::size_t>(d) + 1, Gf(0));
  for (int i = 0; i <= a.degree(); ++i) v[static_cast<std::size_t>(d - i)] = a.coeff(i);
  return Poly(std::move(v), a.ctx());
}

int multiplicity(const Poly& a, const Gf& mu) {
  const Poly lin = Poly::linear(mu, a.ctx());
  Poly cur = a;
  int k = 0;
  while (!cur.is_zero()) {
    auto [q, r] = divmod(cur, lin);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++k;
  }
  return k;
}

std::vector<Gf> roots(const Poly& a) {
  std::vector<Gf> out;
  if (a.degree() <= 0) return out;
  const Poly f = monic(a);
  const FieldCtx* ctx = f.ctx();
  const Poly t = tvar(ctx);
  const Poly g = gcd(f, frobenius_power(t, ctx->degree(), f) + t);
  split_roots(g, out);
  std::sort(out.begin(), out.end());
  for (Gf& x : out) x.ctx = ctx;
  return out;
}

Poly nonlinear_irreducible_factor(const Poly& a) {
  if (a.degree() <= 1) return Poly(a.ctx());
  const FieldCtx* ctx = a.ctx();
  const int n = ctx->degree();
  const Poly t = tvar(ctx);
  Poly f = monic(a);
  for (const Gf& r : roots(f)) {
    while (multiplicity(f, r) > 0) f = f / Poly::linear(r, ctx);
  }
  if (f.degree() <= 0) return Poly(ctx);
  // The first d with a nontrivial gcd(f, t^(q^d) - t) gives the product of the
  // distinct degree-d irreducible factors.
  Poly h = t;
  for (int d = 1; d <= f.degree(); ++d) {
    h = frobenius_power(h, n, f);
    Poly part = gcd(f, h + t);
    if (d == 1 || part.degree() <= 0) continue;
    // Equal-degree splitting with a fixed-seed generator for reproducibility.
    std::mt19937_64 rng(0x6b6c65696e34ULL);
    while (part.degree() > d) {
      std::vector<Gf> c(static_cast<std::size_t>(part.degree()), Gf(0));
      for (Gf& x : c) x = ctx->element(rng());
      const Poly cand = gcd(part, trace_map(Poly(std::move(c), ctx), n * d, part));
      if (cand.degree() > 0 && cand.degree() < part.degree()) {
        part = cand.degree() <= part.degree() / 2 ? cand : part / cand;
        part = monic(part);
      }
    }
    return monic(part);
  }
  return Poly(ctx);
}

std::map<Gf, int> split_linear(const Poly& a) {
  std::map<Gf, int> out;
  int total = 0;
  for (const Gf& r : roots(a)) {
    const int k = multiplicity(a, r);
    out[r] = k;
    total += k;
  }
  if (total != a.degree()) {
    const Poly bad = nonlinear_irreducible_factor(a);
    throw Error(ErrorKind::NonSplitDenominator,
                "irreducible factor " + to_string(bad) + " has no root in the field");
  }
  return out;
}

std::string to_string(const Poly& a, const std::string& var) {
  if (a.is_zero()) return "0";
  std::string s;
  for (int i = a.degree(); i >= 0; --i) {
    const Gf c = a.coeff(i);
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    const std::string lit = c.is_one() ? "1" : a.ctx()->power_literal(c);
    if (i == 0) {
      s += lit;
      continue;
    }
    if (!c.is_one()) s += lit + "*";
    s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

Gf embed_subfield(const Gf& c, const FieldCtx& small, const FieldCtx& large) {
  const int m = small.degree();
  if (large.degree() % m != 0) {
    throw Error(ErrorKind::NonDividingDegree, std::to_string(m) + " does not divide " + std::to_string(large.degree()));
  }
  std::vector<Gf> mod(static_cast<std::size_t>(m) + 1, Gf(0));
  for (int i = 0; i < m; ++i) mod[static_cast<std::size_t>(i)] = Gf(static_cast<int>((small.modulus_tail() >> i) & 1U));
  mod.back() = Gf(1);
  const Poly minpoly(std::move(mod), &large);
  const std::vector<Gf> rs = roots(minpoly);
  if (rs.empty()) throw Error(ErrorKind::InvariantViolation, "subfield modulus has no root");
  const Gf root = rs.front();
  Gf acc = large.zero();
  Gf power = large.one();
  for (int i = 0; i < m; ++i) {
    if ((c.bits >> i) & 1U) acc += power;
    power *= root;
  }
  return acc;
}

}  // namespace klein4
