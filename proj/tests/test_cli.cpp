#include <doctest.h>

#include <random>
#include <sstream>

#include "klein4/pipeline.hpp"
#include "support.hpp"

using namespace klein4;
using namespace klein4::testing;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

const char* kFourPoint = R"(# four branch points over F_16
field_degree = 4
mode = full
let a = g^5
let b = 1/(1 + a*g)
p = 1/(t*(t-1)^3*(t-a)^3*(t-b)^3)
q = a/(t^3*(t-1)*(t-a)^3*(t-b)^3)
)";

InstanceConfig config_of(const std::string& text) {
  std::istringstream in(text);
  return load_config(in);
}

}  // namespace

TEST_CASE("expression parser") {
  const Fixture fx = four_point_cover();
  const FieldCtx& F = *fx.ctx;
  const Gf a = F.gen_pow(5);
  const Gf b = inverse(F.one() + a * F.generator());
  const Bindings env{{"b", RatFun::constant(b, &F)}};
  CHECK(parse_expr("1/(t*(t-1)^3*(t-g^5)^3*(t-b)^3)", F, env) == fx.p);
  CHECK(parse_expr("t^11 + 0", F) == pow(RatFun::t(&F), 11));
  CHECK(parse_expr("3*t + 2", F) == RatFun::t(&F));
  CHECK(parse_expr("[0110]", F) == RatFun::constant(F.element(6), &F));
  CHECK(parse_expr("g^-1 * g", F) == RatFun::constant(F.one(), &F));
  CHECK(parse_expr("-(t^-2)", F) == pow(RatFun::t(&F), -2));
  CHECK(kind_of([&] { parse_expr("1/(t-t)", F); }) == ErrorKind::DivisionByZeroPoly);
  CHECK(kind_of([&] { parse_expr("t^", F); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([&] { parse_expr("(t+1", F); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([&] { parse_expr("t + x", F); }) == ErrorKind::UnknownSymbol);
  CHECK(parse_point("inf", F) == ProjPoint::infinity());
  CHECK(parse_point("g^3", F) == ProjPoint::finite(F.gen_pow(3)));
}

TEST_CASE("parsing the printed form gives back the function") {
  std::mt19937_64 rng(80);
  auto F = FieldCtx::make(5);
  const RatFun t = RatFun::t(F.get());
  for (int k = 0; k < 60; ++k) {
    RatFun num = RatFun::constant(random_nonzero(rng, *F), F.get());
    RatFun den = RatFun::constant(F->one(), F.get());
    for (int j = 0; j < 4; ++j) {
      num = num * t + RatFun::constant(random_element(rng, *F), F.get());
      den = den * (t - RatFun::constant(random_element(rng, *F), F.get()));
    }
    const RatFun f = num / den;
    CHECK(parse_expr(to_string(f), *F) == f);
  }
}

TEST_CASE("configuration files") {
  const InstanceConfig c = config_of(kFourPoint);
  CHECK(c.field_degree == 4);
  CHECK(c.mode == Mode::Full);
  CHECK(c.lets.size() == 2);
  CHECK(c.lets[0].first == "a");
  CHECK(c.p_expr == "1/(t*(t-1)^3*(t-a)^3*(t-b)^3)");
  CHECK_FALSE(c.modulus_tail.has_value());
  CHECK(kind_of([] { config_of("field_degree = 4\ncolour = red\n"); }) == ErrorKind::SyntaxError);
  CHECK(parse_mode("predict") == Mode::Predict);
  CHECK(parse_modulus_tail("13", 4) == 0x3);
  const InstanceConfig m = config_of("field_degree = 4\nmodulus = 19\np = t^3\nq = g*t^3\n");
  CHECK(m.modulus_tail == std::optional<std::uint64_t>{0x9});
}

TEST_CASE("full run on the four point cover") {
  const Report r = run(config_of(kFourPoint));
  CHECK(r.verdict == Verdict::Match);
  CHECK(r.exit_code() == 0);
  CHECK(r.json["verdict"] == "MATCH");
  CHECK(r.json["genus"] == 18);
  CHECK(r.json["basis_size"] == 18);
  CHECK(r.json["predicted"] == r.json["verified"]);
  CHECK(r.json["branch_points"].size() == 4);
  const Fixture fx = four_point_cover();
  CHECK(r.json["predicted"] == to_json(fx.expected, *fx.ctx));
  CHECK(r.json["checks"]["non_holomorphic_basis_elements"] == 0);
  CHECK(r.json["checks"]["action_table_agrees"] == true);

  InstanceConfig c = config_of(kFourPoint);
  c.mode = Mode::Predict;
  const Report p = run(c);
  CHECK(p.verdict == Verdict::PredictionOnly);
  CHECK(p.exit_code() == 0);
  CHECK_FALSE(p.json.contains("verified"));
}

TEST_CASE("swapped single point instance") {
  const Report r = run(config_of("field_degree = 4\nlet l = g\np = l^2*t^7\nq = t^3\n"));
  auto F = FieldCtx::make(4);
  const ProjPoint zero = ProjPoint::finite(F->zero());
  const Decomposition want{{IndecLabel::n(4, zero), 1}, {IndecLabel::n(2, zero), 1}, {IndecLabel::triv(), 1}};
  CHECK(r.json["predicted"] == to_json(want, *F));
  CHECK(r.json["verified"] == to_json(want, *F));
  CHECK(r.verdict == Verdict::Match);
}

TEST_CASE("input errors") {
  CHECK(kind_of([] { run(config_of("field_degree = 4\np = t\nq = t\n")); }) == ErrorKind::NotRamified);
  CHECK(kind_of([] { run(config_of("field_degree = 4\np = t^3\nq = g*t^\n")); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { run(config_of("field_degree = 4\np = t^3\nq = z*t^3\n")); }) == ErrorKind::UnknownSymbol);
}

TEST_CASE("reports are deterministic") {
  const std::string a = run(config_of(kFourPoint)).json.dump(2);
  const std::string b = run(config_of(kFourPoint)).json.dump(2);
  CHECK(a == b);
}

TEST_CASE("formula mode over a base of positive genus") {
  auto F = FieldCtx::make(4);
  const std::vector<BranchInvariants> ys{{3, 3, 0, ProjPoint::finite(F->generator())},
                                         {1, 3, -1, ProjPoint::infinity()}};
  const Report r = run_formula(ys, 2, *F);
  CHECK(r.json["epsilon"]["eps5"] == 2);
  CHECK_FALSE(r.json.contains("predicted"));
  const Report r0 = run_formula(ys, 0, *F);
  CHECK(r0.json.contains("predicted"));
}

TEST_CASE("module mode") {
  auto F = FieldCtx::make(3);
  std::istringstream in("dim 3\n0 0 0\n1 0 0\n0 0 0\n0 0 0\n0 0 0\n1 0 0\n");
  const KleinModule m = read_module(in, *F);
  const Report r = run_module(m, *F);
  CHECK(r.json["decomposition"] == to_json(Decomposition{{IndecLabel::m2(3), 1}}, *F));
}
