#include <doctest.h>

#include <random>

#include "klein4/local.hpp"
#include "support.hpp"

using namespace klein4;
using namespace klein4::testing;

namespace {

LaurentJet random_jet(std::mt19937_64& rng, const FieldCtx& F, int lead, int len) {
  LaurentJet j;
  j.point = ProjPoint::infinity();
  j.lead = lead;
  j.precision = lead + len;
  j.coeffs.push_back(random_nonzero(rng, F));
  for (int i = 1; i < len; ++i) j.coeffs.push_back(random_element(rng, F));
  return j;
}

struct Classified {
  CoverAnalysis analysis;
  std::vector<LocalData> locals;
};

Classified run(const Fixture& fx) {
  Classified c{analyze(CoverSpec::make(fx.ctx, fx.p, fx.q)), {}};
  c.locals = classify_all(c.analysis);
  return c;
}

}  // namespace

TEST_CASE("single point, equal orders: b = (l, 0, l, 0, ...), a = 0") {
  for (int d = 1; d <= 3; ++d) {
    const Fixture fx = single_point_family(Variant::Equal, d);
    const Gf l0 = fx.ctx->generator();
    const Classified c = run(fx);
    const LocalData& ld = c.locals.at(0);
    REQUIRE(ld.b.size() == static_cast<std::size_t>(2 * d + 1));
    for (std::size_t i = 0; i < ld.b.size(); ++i) CHECK(ld.b[i] == (i == 0 || i == 2 ? l0 : Gf(0)));
    CHECK(ld.a.size() == static_cast<std::size_t>(2 * d + 1));
    for (const Gf& x : ld.a) CHECK(x.is_zero());
    CHECK(ld.lambda == ProjPoint::finite(l0));
    CHECK(ld.delta == 2);
    CHECK(ld.b_class == BClass::B2);
    CHECK(ld.nu == 0);
  }
}

TEST_CASE("single point, unequal orders: lambda by case") {
  const std::pair<Variant, ProjPoint> cases[] = {
      {Variant::SmallP, ProjPoint::infinity()},
      {Variant::SmallQ, ProjPoint::finite(Gf(0))},
      {Variant::SmallR, ProjPoint::finite(Gf(1))},
  };
  for (const auto& [v, lambda] : cases) {
    const Classified c = run(single_point_family(v, 1));
    CHECK(c.locals[0].lambda == lambda);
    CHECK(c.locals[0].delta == -1);
    CHECK(c.locals[0].b_class == BClass::B3);
    CHECK(c.locals[0].nu == 2);
  }
}

TEST_CASE("four-point cover: one point in B1, three in B3") {
  const Fixture fx = four_point_cover();
  const FieldCtx* F = fx.ctx.get();
  const Gf alpha = F->gen_pow(5);
  const Classified c = run(fx);
  std::map<ProjPoint, const LocalData*> at;
  for (std::size_t i = 0; i < c.locals.size(); ++i) at[c.analysis.branch[i].original] = &c.locals[i];
  const Gf beta = inverse(F->one() + alpha * F->generator());
  CHECK(at.at(ProjPoint::finite(beta))->lambda == ProjPoint::finite(F->generator()));
  CHECK(at.at(ProjPoint::finite(beta))->delta == 0);
  CHECK(at.at(ProjPoint::finite(beta))->b_class == BClass::B1);
  CHECK(at.at(ProjPoint::finite(F->zero()))->lambda == ProjPoint::infinity());
  CHECK(at.at(ProjPoint::finite(F->one()))->lambda == ProjPoint::finite(F->zero()));
  CHECK(at.at(ProjPoint::finite(alpha))->lambda == ProjPoint::finite(F->one()));
  for (const Gf& mu : {F->zero(), F->one(), alpha}) CHECK(at.at(ProjPoint::finite(mu))->b_class == BClass::B3);
}

TEST_CASE("quintic poles: b = (lambda_i, 1) in the input coordinate") {
  const Fixture fx = quintic_poles_cover(3);
  const FieldCtx* F = fx.ctx.get();
  for (int i = 0; i < 3; ++i) {
    const Gf li = F->gen_pow(3 + i);
    const ProjPoint y = ProjPoint::finite(li);
    const LaurentJet pj = laurent_at(fx.p, y, -5 + 2 + 2);
    const LaurentJet qj = laurent_at(fx.q, y, -5 + 2 + 2);
    const std::vector<Gf> b = solve_b_coeffs(pj, qj, 5, 5);
    REQUIRE(b.size() == 2);
    CHECK(b[0] == li);
    CHECK(b[1].is_one());
  }
  const Classified c = run(fx);
  for (const LocalData& ld : c.locals) {
    CHECK(ld.delta == 1);
    CHECK(ld.b_class == BClass::B2);
  }
}

TEST_CASE("coefficient equations hold on random jets") {
  std::mt19937_64 rng(40);
  auto F = FieldCtx::make(8);
  for (int k = 0; k < 300; ++k) {
    const int m = 2 * std::uniform_int_distribution<int>(0, 10)(rng) + 1;
    const int M = m + 2 * std::uniform_int_distribution<int>(0, 3)(rng);
    const int len = 2 * (m / 4) + 2 + m;
    const LaurentJet pj = random_jet(rng, *F, -m, len);
    const LaurentJet qj = random_jet(rng, *F, -M, len);
    const auto p = [&](int i) { return pj.at(-m + i); };
    const auto q = [&](int i) { return qj.at(-M + i); };
    const std::vector<Gf> b = solve_b_coeffs(pj, qj, m, M);
    REQUIRE(b.size() == static_cast<std::size_t>(m / 4 + 1));
    for (int j = 0; j <= m / 4; ++j) {
      Gf sum = q(2 * j);
      for (int i = 0; i <= j; ++i) sum += p(2 * (j - i)) * b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
      CHECK(sum.is_zero());
    }
    if (m == 1) CHECK(b[0] == sqrt(q(0) / p(0)));
    const std::vector<Gf> a = solve_a_coeffs(pj, qj, b, m, M);
    CHECK(a.size() == static_cast<std::size_t>(mu2(m) - mu1(m)));
    for (std::size_t j = 0; j < a.size(); ++j) {
      Gf rhs = q(2 * static_cast<int>(j) + 1);
      for (std::size_t i = 0; i <= j && i < b.size(); ++i) {
        rhs += p(2 * static_cast<int>(j - i) + 1) * b[i] * b[i];
      }
      CHECK(a[j] * a[j] == rhs);
    }
  }
}

TEST_CASE("vanishing leading coefficient is rejected") {
  auto F = FieldCtx::make(4);
  LaurentJet zero;
  zero.lead = -3;
  zero.precision = 2;
  LaurentJet q;
  q.lead = -3;
  q.coeffs = {F->one()};
  q.precision = 2;
  try {
    (void)solve_b_coeffs(zero, q, 3, 3);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateLeadingCoefficient);
  }
}

TEST_CASE("random covers classify as planned") {
  std::mt19937_64 rng(41);
  auto F = FieldCtx::make(8);
  for (int k = 0; k < 80; ++k) {
    const GeneratedCover g = random_cover(rng, F);
    const CoverAnalysis a = analyze(CoverSpec::make(F, g.p, g.q));
    const std::vector<LocalData> locals = classify_all(a);
    std::map<ProjPoint, const LocalData*> at;
    for (std::size_t i = 0; i < locals.size(); ++i) at[a.branch[i].original] = &locals[i];
    for (const PlannedPoint& pl : g.plan) {
      const LocalData& ld = *at.at(pl.y);
      CHECK(ld.lambda == pl.lambda);
      CHECK(ld.delta == pl.delta);
      CHECK(ld.b_class == (pl.delta == 0 ? BClass::B1 : pl.delta > 0 ? BClass::B2 : BClass::B3));
      CHECK(ld.delta >= -1);
      CHECK(ld.delta <= pl.m / 4);
      if (ld.delta >= 1 && ld.delta == mu2(pl.m) - mu1(pl.m)) CHECK(pl.m % 4 == 1);
    }
  }
}
