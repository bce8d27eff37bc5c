#include "support.hpp"

namespace klein4::testing {

namespace {

RatFun tvar(const FieldCtx* c) { return RatFun::t(c); }

RatFun cst(const Gf& x, const FieldCtx* c) { return RatFun::constant(x, c); }

// c * pi_y^{-i}
RatFun pole_term(const ProjPoint& y, const Gf& c, int i, const FieldCtx* ctx) {
  if (y.infinite) return c * pow(tvar(ctx), i);
  return RatFun(Poly::constant(c, ctx), pow(Poly::linear(y.mu, ctx), i));
}

// sum_{i=1}^{order} c_i pi^{-i} with c_order != 0.
RatFun random_principal_part(std::mt19937_64& rng, const ProjPoint& y, int order, const FieldCtx& ctx) {
  RatFun acc(&ctx);
  for (int i = 1; i < order; ++i) acc += pole_term(y, random_element(rng, ctx), i, &ctx);
  return acc + pole_term(y, random_nonzero(rng, ctx), order, &ctx);
}

int random_odd(std::mt19937_64& rng, int lo, int hi) {
  std::vector<int> opts;
  for (int x = lo; x <= hi; ++x) {
    if (x % 2 == 1) opts.push_back(x);
  }
  return opts[std::uniform_int_distribution<std::size_t>(0, opts.size() - 1)(rng)];
}

Gf random_lambda(std::mt19937_64& rng, const FieldCtx& ctx) {
  for (;;) {
    const Gf x = random_element(rng, ctx);
    if (!x.is_zero() && !x.is_one()) return x;
  }
}

}  // namespace

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Equal: return "equal";
    case Variant::SmallP: return "small-p";
    case Variant::SmallQ: return "small-q";
    case Variant::SmallR: return "small-r";
  }
  return "?";
}

Fixture four_point_cover() {
  Fixture f;
  f.name = "four-point";
  f.ctx = FieldCtx::make(4);
  const FieldCtx* c = f.ctx.get();
  const Gf l0 = c->generator();
  const Gf alpha = c->gen_pow(5);
  const Gf beta = inverse(c->one() + alpha * l0);
  const RatFun t = tvar(c);
  const auto lin = [&](const Gf& mu) { return t - cst(mu, c); };
  f.p = pow(t * pow(lin(c->one()), 3) * pow(lin(alpha), 3) * pow(lin(beta), 3), -1);
  f.q = alpha * pow(pow(t, 3) * lin(c->one()) * pow(lin(alpha), 3) * pow(lin(beta), 3), -1);
  add(f.expected, IndecLabel::n(2, ProjPoint::infinity()));
  add(f.expected, IndecLabel::n(2, ProjPoint::finite(c->zero())));
  add(f.expected, IndecLabel::n(2, ProjPoint::finite(c->one())));
  add(f.expected, IndecLabel::n(2, ProjPoint::finite(l0)));
  add(f.expected, IndecLabel::m1(3), 3);
  add(f.expected, IndecLabel::triv());
  return f;
}

Fixture quintic_poles_cover(int n) {
  Fixture f;
  f.name = "quintic-poles n=" + std::to_string(n);
  f.ctx = FieldCtx::make(4);
  const FieldCtx* c = f.ctx.get();
  const RatFun t = tvar(c);
  RatFun den = cst(c->one(), c);
  for (int i = 0; i < n; ++i) {
    const Gf li = c->gen_pow(3 + i);
    den *= pow(t - cst(li, c), 5);
    add(f.expected, IndecLabel::n(2, ProjPoint::finite(li)));
  }
  f.p = pow(den, -1);
  f.q = t * t * f.p;
  add(f.expected, IndecLabel::m1(3), 2 * n - 1);
  add(f.expected, IndecLabel::triv(), n);
  return f;
}

Fixture f4_linear_cover() {
  Fixture f;
  f.name = "f4-linear";
  f.ctx = FieldCtx::make(2);
  const FieldCtx* c = f.ctx.get();
  const Gf alpha = c->generator();
  const RatFun t3 = pow(tvar(c), 3);
  f.p = t3;
  f.q = (alpha * alpha) * t3;
  add(f.expected, IndecLabel::n(2, ProjPoint::finite(alpha)));
  add(f.expected, IndecLabel::triv());
  return f;
}

Fixture single_point_family(Variant v, int d) {
  Fixture f;
  f.name = std::string("single-point ") + to_string(v) + " d=" + std::to_string(d);
  f.ctx = FieldCtx::make(4);
  const FieldCtx* c = f.ctx.get();
  const Gf l0 = c->generator();
  const Gf l2 = l0 * l0;
  const RatFun t = tvar(c);
  const RatFun tinv4 = pow(t, -4);
  if (v == Variant::Equal) {
    f.p = pow(t, 8 * d + 3);
    f.q = l2 * pow(t, 8 * d + 3) * (cst(c->one(), c) + tinv4);
    add(f.expected, IndecLabel::n(2 * (d + 1), ProjPoint::finite(l0)));
    add(f.expected, IndecLabel::n(2 * d, ProjPoint::finite(l0)));
    add(f.expected, IndecLabel::m1(3), 2 * d);
    add(f.expected, IndecLabel::triv(), 2 * d + 1);
    return f;
  }
  const RatFun small = pow(t, 8 * d - 5);
  const RatFun big = l2 * pow(t, 8 * d - 1);
  const RatFun mixed = pow(t, 8 * d - 1) * (cst(l2, c) + tinv4);
  ProjPoint lambda = ProjPoint::infinity();
  if (v == Variant::SmallP) {
    f.p = small;
    f.q = big;
  } else if (v == Variant::SmallQ) {
    f.p = big;
    f.q = small;
    lambda = ProjPoint::finite(c->zero());
  } else {
    f.p = mixed;
    f.q = big;
    lambda = ProjPoint::finite(c->one());
  }
  add(f.expected, IndecLabel::n(2 * (d + 1), lambda));
  add(f.expected, IndecLabel::n(2 * d, lambda));
  add(f.expected, IndecLabel::m1(3), 2 * d - 2);
  add(f.expected, IndecLabel::triv(), 2 * d - 1);
  return f;
}

std::vector<Fixture> all_fixtures(int max_d, int max_n) {
  std::vector<Fixture> out{f4_linear_cover(), four_point_cover()};
  for (int n = 1; n <= max_n; ++n) out.push_back(quintic_poles_cover(n));
  for (Variant v : {Variant::Equal, Variant::SmallP, Variant::SmallQ, Variant::SmallR}) {
    for (int d = 1; d <= max_d; ++d) out.push_back(single_point_family(v, d));
  }
  return out;
}

Gf random_element(std::mt19937_64& rng, const FieldCtx& ctx) { return ctx.element(rng()); }

Gf random_nonzero(std::mt19937_64& rng, const FieldCtx& ctx) {
  for (;;) {
    const Gf x = random_element(rng, ctx);
    if (!x.is_zero()) return x;
  }
}

ProjPoint random_point(std::mt19937_64& rng, const FieldCtx& ctx) {
  const std::uint64_t size = ctx.mask() + 1;
  const std::uint64_t k = std::uniform_int_distribution<std::uint64_t>(0, size)(rng);
  return k == size ? ProjPoint::infinity() : ProjPoint::finite(ctx.element(k));
}

GeneratedCover random_cover(std::mt19937_64& rng, const std::shared_ptr<const FieldCtx>& ctx, int max_points,
                            int max_m, int max_M) {
  const FieldCtx& F = *ctx;
  GeneratedCover out;
  out.p = RatFun(&F);
  out.q = RatFun(&F);
  const int count = std::uniform_int_distribution<int>(1, max_points)(rng);
  std::set<ProjPoint> used;
  while (static_cast<int>(used.size()) < count) used.insert(random_point(rng, F));
  for (const ProjPoint& y : used) {
    PlannedPoint pl;
    pl.y = y;
    pl.m = random_odd(rng, 1, max_m);
    pl.tag = static_cast<CaseTag>(std::uniform_int_distribution<int>(0, pl.m < max_M ? 3 : 0)(rng));
    pl.M = pl.tag == CaseTag::I ? pl.m : random_odd(rng, pl.m + 1, max_M);
    RatFun P(&F);
    RatFun Q(&F);
    switch (pl.tag) {
      case CaseTag::I: {
        const Gf lambda = random_lambda(rng, F);
        pl.lambda = ProjPoint::finite(lambda);
        pl.delta = std::uniform_int_distribution<int>(0, pl.m / 4)(rng);
        P = random_principal_part(rng, y, pl.m, F);
        Q = (lambda * lambda) * P;
        if (pl.delta > 0) Q += pole_term(y, random_nonzero(rng, F), pl.m - 2 * pl.delta, &F);
        // Noise that leaves b_0..b_{m/4} untouched: odd jet indices, or even
        // indices beyond 2 floor(m/4).
        for (int i = 1; i < pl.m; ++i) {
          if (i % 2 == 1 || i > 2 * (pl.m / 4)) Q += pole_term(y, random_element(rng, F), pl.m - i, &F);
        }
        break;
      }
      case CaseTag::IIa:
        pl.delta = -1;
        pl.lambda = ProjPoint::infinity();
        P = random_principal_part(rng, y, pl.m, F);
        Q = random_principal_part(rng, y, pl.M, F);
        break;
      case CaseTag::IIb:
        pl.delta = -1;
        pl.lambda = ProjPoint::finite(F.zero());
        P = random_principal_part(rng, y, pl.M, F);
        Q = random_principal_part(rng, y, pl.m, F);
        break;
      case CaseTag::IIc:
        pl.delta = -1;
        pl.lambda = ProjPoint::finite(F.one());
        P = random_principal_part(rng, y, pl.M, F);
        Q = P + random_principal_part(rng, y, pl.m, F);
        break;
    }
    out.p += P;
    out.q += Q;
    out.plan.push_back(pl);
  }
  return out;
}

GfMatrix random_matrix(std::mt19937_64& rng, const FieldCtx& ctx, int rows, int cols) {
  GfMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = random_element(rng, ctx);
  }
  return a;
}

GfMatrix random_invertible(std::mt19937_64& rng, const FieldCtx& ctx, int n) {
  for (;;) {
    GfMatrix a = random_matrix(rng, ctx, n, n);
    if (linalg::rank(a) == n) return a;
  }
}

IndecLabel random_label(std::mt19937_64& rng, const FieldCtx& ctx, int max_n) {
  const int kind = std::uniform_int_distribution<int>(0, 4)(rng);
  const int n = std::uniform_int_distribution<int>(1, max_n)(rng);
  switch (kind) {
    case 0: return IndecLabel::triv();
    case 1: return IndecLabel::free();
    case 2: {
      // Favour the special parameters and repeated eigenvalues.
      const int pick = std::uniform_int_distribution<int>(0, 5)(rng);
      ProjPoint l = random_point(rng, ctx);
      if (pick == 0) l = ProjPoint::infinity();
      if (pick == 1) l = ProjPoint::finite(ctx.zero());
      if (pick == 2) l = ProjPoint::finite(ctx.one());
      if (pick == 3) l = ProjPoint::finite(ctx.generator());
      return IndecLabel::n(2 * n, l);
    }
    case 3: return IndecLabel::m1(2 * n + 1);
    default: return IndecLabel::m2(2 * n + 1);
  }
}

Decomposition random_decomposition(std::mt19937_64& rng, const FieldCtx& ctx, int max_dim, int max_summands,
                                   int max_n) {
  Decomposition d;
  int dim = 0;
  for (int k = 0; k < max_summands; ++k) {
    const IndecLabel l = random_label(rng, ctx, max_n);
    if (dim + l.dim > max_dim) break;
    add(d, l);
    dim += l.dim;
  }
  return d;
}

SubquotientDims table_row(const IndecLabel& l, const ProjPoint& probe) {
  switch (l.kind) {
    case IndecKind::Triv: return {0, 0, 0, 1};
    case IndecKind::Free: return {1, 1, 1, 1};
    case IndecKind::N: {
      const int n = l.dim / 2;
      const bool hit = l.lambda == probe;
      return {0, hit ? n - 1 : n, hit ? 1 : 0, n};
    }
    case IndecKind::M1: {
      const int n = (l.dim - 1) / 2;
      return {0, n, 1, n};
    }
    case IndecKind::M2: {
      const int n = (l.dim - 1) / 2;
      return {0, n, 0, n + 1};
    }
  }
  return {};
}

SubquotientDims table_sum(const Decomposition& d, const ProjPoint& probe) {
  SubquotientDims acc;
  for (const auto& [l, k] : d) {
    const SubquotientDims r = table_row(l, probe);
    acc.d43 += k * r.d43;
    acc.d32 += k * r.d32;
    acc.d21 += k * r.d21;
    acc.d10 += k * r.d10;
  }
  return acc;
}

}  // namespace klein4::testing
