#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "klein4/pipeline.hpp"
#include "support.hpp"

using namespace klein4;
using namespace klein4::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Checked {
  Instance inst;
  Decomposition predicted;
  Verification verified;
  double seconds = 0;
};

Checked check_both_paths(const std::shared_ptr<const FieldCtx>& ctx, const RatFun& p, const RatFun& q) {
  const auto t0 = Clock::now();
  Checked c{prepare(ctx, p, q), {}, {}, 0};
  c.predicted = decompose_p1(c.inst.invariants);
  c.verified = verify(c.inst, true);
  c.seconds = seconds_since(t0);
  return c;
}

void expect_fixture(Outcome& out, const Fixture& fx, double limit) {
  const Checked c = check_both_paths(fx.ctx, fx.p, fx.q);
  const FieldCtx& F = *fx.ctx;
  if (c.predicted != fx.expected) {
    out.fail(fx.name + ": predicted " + to_string(c.predicted, F) + ", want " + to_string(fx.expected, F));
  }
  if (c.verified.decomposition != fx.expected) {
    out.fail(fx.name + ": verified " + to_string(c.verified.decomposition, F) + ", want " + to_string(fx.expected, F));
  }
  if (c.verified.non_holomorphic != 0) out.fail(fx.name + ": basis element with a pole");
  if (!c.verified.table_agrees) out.fail(fx.name + ": action table disagrees with the Galois action");
  if (c.seconds >= limit) out.fail(fx.name + ": took " + std::to_string(c.seconds) + " s");
}

Outcome criterion_1() {
  Outcome out;
  expect_fixture(out, four_point_cover(), 5.0);
  return out;
}

Outcome criterion_2() {
  Outcome out;
  for (int n = 1; n <= 5; ++n) expect_fixture(out, quintic_poles_cover(n), 10.0);
  return out;
}

Outcome criterion_3() {
  Outcome out;
  for (Variant v : {Variant::Equal, Variant::SmallP, Variant::SmallQ, Variant::SmallR}) {
    for (int d = 1; d <= 4; ++d) expect_fixture(out, single_point_family(v, d), 30.0);
  }
  return out;
}

// Shared by criteria 4, 5 and 9.
struct Sweep {
  int instances = 0;
  std::vector<std::string> mismatches;
  std::vector<std::string> size_errors;
  std::vector<std::string> epsilon_errors;
};

const Sweep& random_sweep() {
  static const Sweep sweep = [] {
    Sweep s;
    std::mt19937_64 rng(20240611);
    auto F = FieldCtx::make(8);
    for (int k = 0; k < 100; ++k) {
      const GeneratedCover g = random_cover(rng, F, 3, 11, 15);
      const Checked c = check_both_paths(F, g.p, g.q);
      ++s.instances;
      const std::string tag = "instance " + std::to_string(k);
      if (c.predicted != c.verified.decomposition) {
        s.mismatches.push_back(tag + ": " + to_string(c.predicted, *F) + " vs " +
                               to_string(c.verified.decomposition, *F));
      }
      const int g_x = c.inst.analysis.genus_X;
      if (static_cast<int>(c.verified.basis_size) != g_x || total_dim(c.verified.decomposition) != g_x) {
        s.size_errors.push_back(tag + ": basis " + std::to_string(c.verified.basis_size) + ", genus " +
                                std::to_string(g_x) + ", dim " + std::to_string(total_dim(c.verified.decomposition)));
      }
      for (const std::string& e : check_epsilons(c.verified.decomposition, c.inst.invariants, 0, *F)) {
        s.epsilon_errors.push_back(tag + ": " + e);
      }
    }
    return s;
  }();
  return sweep;
}

Outcome from_list(const std::vector<std::string>& errors, int total) {
  Outcome out;
  if (!errors.empty()) out.fail(std::to_string(errors.size()) + "/" + std::to_string(total) + ", first " + errors[0]);
  return out;
}

Outcome criterion_4() {
  const Sweep& s = random_sweep();
  return from_list(s.mismatches, s.instances);
}

Outcome criterion_5() {
  const Sweep& s = random_sweep();
  return from_list(s.size_errors, s.instances);
}

Outcome criterion_6() {
  Outcome out;
  auto F = FieldCtx::make(6);
  std::mt19937_64 rng(6);
  const auto check = [&](const Decomposition& d, const KleinModule& m, const ProjPoint& probe) {
    if (filtration_subquotient_dims(m, probe) != table_sum(d, probe)) {
      out.fail(to_string(d, *F) + " at probe " + to_string(probe, *F));
    }
  };
  for (int n = 1; n <= 6; ++n) {
    std::vector<IndecLabel> labels{IndecLabel::triv(), IndecLabel::free(), IndecLabel::m1(2 * n + 1),
                                   IndecLabel::m2(2 * n + 1)};
    for (const ProjPoint& l : {ProjPoint::infinity(), ProjPoint::finite(F->zero()), ProjPoint::finite(F->one()),
                               ProjPoint::finite(F->gen_pow(n + 4))}) {
      labels.push_back(IndecLabel::n(2 * n, l));
    }
    for (const IndecLabel& lab : labels) {
      const Decomposition d{{lab, 1}};
      const KleinModule m = build_indecomposable(lab, *F);
      std::vector<ProjPoint> probes{ProjPoint::infinity(), ProjPoint::finite(F->zero()), ProjPoint::finite(F->one()),
                                    ProjPoint::finite(F->gen_pow(n + 4)), ProjPoint::finite(F->gen_pow(n + 11))};
      for (const ProjPoint& probe : probes) check(d, m, probe);
    }
  }
  for (int k = 0; k < 200; ++k) {
    const Decomposition d = random_decomposition(rng, *F, 80, 10);
    const KleinModule m = change_basis(build(d, *F), random_invertible(rng, *F, total_dim(d)));
    for (const auto& [lab, mult] : d) {
      if (lab.kind == IndecKind::N) check(d, m, lab.lambda);
    }
    check(d, m, random_point(rng, *F));
  }
  return out;
}

Outcome criterion_7() {
  Outcome out;
  auto F = FieldCtx::make(8);
  std::mt19937_64 rng(7);
  int largest = 0;
  for (int k = 0; k < 500; ++k) {
    const Decomposition d = random_decomposition(rng, *F, 120, 24);
    largest = std::max(largest, total_dim(d));
    const KleinModule m = change_basis(build(d, *F), random_invertible(rng, *F, total_dim(d)));
    const Decomposition got = decompose(m, *F);
    if (got != d) out.fail("sum " + std::to_string(k) + ": " + to_string(got, *F) + " vs " + to_string(d, *F));
  }
  if (out.ok) out.detail = "largest dim " + std::to_string(largest);
  return out;
}

Outcome criterion_8() {
  Outcome out;
  for (const Fixture& fx : all_fixtures(4, 5)) {
    const Instance inst = prepare(fx.ctx, fx.p, fx.q);
    const KleinModule m = verify(inst, false).module;
    for (const ProjPoint& l : canonical_probes(inst.invariants, *fx.ctx)) {
      const FiltrationDims r = filtration_dims(inst.invariants, l);
      const SubquotientDims s = filtration_subquotient_dims(m, l);
      if (r != FiltrationDims{s.d10 + 1, s.d21 + 1, s.d32 + 1, s.d43 + 1}) {
        out.fail(fx.name + " at probe " + to_string(l, *fx.ctx));
      }
    }
  }
  return out;
}

Outcome criterion_9() {
  std::vector<std::string> errors = random_sweep().epsilon_errors;
  int total = random_sweep().instances;
  for (const Fixture& fx : all_fixtures(4, 5)) {
    const Instance inst = prepare(fx.ctx, fx.p, fx.q);
    for (const std::string& e : check_epsilons(verify(inst, false).decomposition, inst.invariants, 0, *fx.ctx)) {
      errors.push_back(fx.name + ": " + e);
    }
    ++total;
  }
  // A lambda carried only by m = 1 points of the first class may be absent.
  auto F = FieldCtx::make(4);
  const ProjPoint l = ProjPoint::finite(F->generator());
  const std::vector<BranchInvariants> ys{{1, 1, 0, l}, {3, 3, 0, ProjPoint::finite(F->gen_pow(2))}};
  if (!check_epsilons(decompose_p1(ys), ys, 0, *F).empty()) errors.push_back("droppable lambda rejected");
  const std::vector<BranchInvariants> kept{{3, 3, 0, l}};
  Decomposition without = decompose_p1(kept);
  without.erase(IndecLabel::n(2, l));
  if (check_epsilons(without, kept, 0, *F).empty()) {
    errors.push_back("missing lambda accepted");
  }
  return from_list(errors, total + 2);
}

Outcome criterion_10() {
  Outcome out;
  auto F = FieldCtx::make(8);
  std::mt19937_64 rng(10);
  const std::array<std::array<Involution, 3>, 6> autos{{
      {Involution::Sigma, Involution::Tau, Involution::SigmaTau},
      {Involution::Tau, Involution::Sigma, Involution::SigmaTau},
      {Involution::Sigma, Involution::SigmaTau, Involution::Tau},
      {Involution::SigmaTau, Involution::Tau, Involution::Sigma},
      {Involution::Tau, Involution::SigmaTau, Involution::Sigma},
      {Involution::SigmaTau, Involution::Sigma, Involution::Tau},
  }};
  const auto inv = [&](const ProjPoint& x) {
    if (x.infinite) return ProjPoint::finite(F->zero());
    return x.mu.is_zero() ? ProjPoint::infinity() : ProjPoint::finite(inverse(x.mu));
  };
  const auto plus1 = [&](const ProjPoint& x) { return x.infinite ? x : ProjPoint::finite(x.mu + F->one()); };

  std::vector<ProjPoint> params{ProjPoint::infinity(), ProjPoint::finite(F->zero()), ProjPoint::finite(F->one())};
  for (int k = 0; k < 20; ++k) params.push_back(ProjPoint::finite(random_element(rng, *F)));

  for (int n = 1; n <= 4; ++n) {
    GfMatrix J = GfMatrix::Constant(n, n, F->zero());
    for (int i = 0; i + 1 < n; ++i) J(i, i + 1) = F->one();
    const GfMatrix I = GfMatrix::Identity(n, n).unaryExpr([&](const Gf& g) { return g.is_one() ? F->one() : F->zero(); });
    GfMatrix X1 = GfMatrix::Constant(2 * n, 2 * n, F->zero());
    GfMatrix X2 = X1;
    X1.block(0, n, n, n) = J;
    X2.block(0, n, n, n) = I;
    const std::array<std::pair<std::pair<Involution, Involution>, ProjPoint>, 3> patterns{{
        {{Involution::Sigma, Involution::Tau}, ProjPoint::infinity()},
        {{Involution::Tau, Involution::Sigma}, ProjPoint::finite(F->zero())},
        {{Involution::SigmaTau, Involution::Tau}, ProjPoint::finite(F->one())},
    }};
    for (const auto& [rho, want] : patterns) {
      const Decomposition got = decompose(from_generator_pair(X1, X2, rho.first, rho.second), *F);
      if (got != Decomposition{{IndecLabel::n(2 * n, want), 1}}) {
        out.fail("generator pattern n=" + std::to_string(n) + " gave " + to_string(got, *F));
      }
    }
    for (const ProjPoint& l : params) {
      const KleinModule m = build_indecomposable(IndecLabel::n(2 * n, l), *F);
      const auto single_lambda = [&](const KleinModule& x) -> std::optional<ProjPoint> {
        const Decomposition d = decompose(x, *F);
        if (d.size() != 1 || d.begin()->second != 1) return std::nullopt;
        const IndecLabel& lab = d.begin()->first;
        if (lab.kind != IndecKind::N || lab.dim != 2 * n) return std::nullopt;
        return lab.lambda;
      };
      if (single_lambda(relabel(m, autos[1])) != inv(l)) out.fail("swap of sigma and tau at " + to_string(l, *F));
      if (single_lambda(relabel(m, autos[2])) != plus1(l)) out.fail("swap of tau and sigma tau at " + to_string(l, *F));
      std::set<ProjPoint> orbit;
      for (const auto& xi : autos) {
        const auto got = single_lambda(relabel(m, xi));
        if (!got) {
          out.fail("relabelled module is not N(" + std::to_string(2 * n) + ", .)");
          continue;
        }
        orbit.insert(*got);
      }
      const std::vector<ProjPoint> c = cohort(l, *F);
      if (std::vector<ProjPoint>(orbit.begin(), orbit.end()) != c) out.fail("orbit of " + to_string(l, *F));
      const bool in_f4 = l.infinite || l.mu.is_zero() || l.mu.is_one() || (l.mu * l.mu + l.mu).is_one();
      if (!in_f4 && c.size() != 6) out.fail("cohort of " + to_string(l, *F) + " has " + std::to_string(c.size()));
      if ((l.infinite || l.mu.is_zero() || l.mu.is_one()) && c.size() != 3) out.fail("cohort of 0, 1, inf");
    }
  }
  auto F4 = FieldCtx::make(2);
  const Gf a = F4->generator();
  if (cohort(ProjPoint::finite(a), *F4) != std::vector<ProjPoint>{ProjPoint::finite(a), ProjPoint::finite(a + F4->one())}) {
    out.fail("cohort of a cube root of unity");
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"four-point cover over F_16, both paths, < 5 s", criterion_1},
      {"quintic poles at n = 1..5 points, < 10 s each", criterion_2},
      {"single-point families d = 1..4, all four cases, < 30 s each", criterion_3},
      {"100 random covers over F_256: closed form = matrix decomposition", criterion_4},
      {"basis size = genus = total dimension on the random covers", criterion_5},
      {"subquotient table for every kind, n = 1..6, and additivity", criterion_6},
      {"500 random sums under change of basis decompose back", criterion_7},
      {"filtration dimensions: formula vs matrices on all fixtures", criterion_8},
      {"epsilon constraints on every verified decomposition", criterion_9},
      {"generator patterns, relabelling and cohorts, n = 1..4", criterion_10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = seconds_since(t0);
    std::printf("criterion %2zu: %s  %s (%.2f s)%s%s\n", i + 1, o.ok ? "PASS" : "FAIL", criteria[i].first.c_str(), s,
                o.detail.empty() ? "" : " ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
