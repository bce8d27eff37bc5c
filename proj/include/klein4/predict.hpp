#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klein4/decomposition.hpp"
#include "klein4/local.hpp"

namespace klein4 {

/// The ramification data the closed formulas depend on. Usable on its own
/// (formula mode) without any rational functions.
struct BranchInvariants {
  int m = 1;
  int M = 1;
  int delta = 0;
  ProjPoint lambda;

  [[nodiscard]] int nu() const { return (M - m) / 2; }
  [[nodiscard]] BClass b_class() const { return delta == 0 ? BClass::B1 : delta > 0 ? BClass::B2 : BClass::B3; }
  /// Case tag implied by (delta, lambda).
  [[nodiscard]] CaseTag tag() const;
};

BranchInvariants invariants_of(const BranchPoint& bp, const LocalData& ld);
std::vector<BranchInvariants> invariants_of(const CoverAnalysis& a, const std::vector<LocalData>& locals);

/// Throws InvalidArgument when the tuple cannot come from a totally ramified
/// branch point (parity, order, delta range, lambda class).
void validate(const BranchInvariants& b);

/// The point (a:b) selecting f_2 = (a/b)(sigma-1) + (tau-1), or sigma-1 when b = 0.
struct ProbeDirection {
  Gf a{1};
  Gf b{0};

  static ProbeDirection of(const ProjPoint& lambda);
  /// (c:d) seen by a branch point of the given case.
  [[nodiscard]] ProbeDirection switched(CaseTag tag) const;
};

struct DivisorCoeffs {
  int d0 = 0;
  int d1 = 0;
  int d2 = 0;
  int d3 = 0;
};
bool operator==(const DivisorCoeffs& x, const DivisorCoeffs& y);

DivisorCoeffs divisor_coeffs(const BranchInvariants& y, const ProjPoint& probe);

/// r_0..r_3 for base genus 0.
struct FiltrationDims {
  int r0 = 0;
  int r1 = 0;
  int r2 = 0;
  int r3 = 1;
};
bool operator==(const FiltrationDims& x, const FiltrationDims& y);

FiltrationDims filtration_dims(const std::vector<BranchInvariants>& ys, const ProjPoint& probe);

struct EpsilonConstraints {
  std::map<ProjPoint, int> eps1;  // for every lambda in Lambda_br
  int eps2 = 0;
  int eps34 = 0;
  int eps5 = 0;
  /// Members of Lambda_br that may be absent from the module.
  std::vector<ProjPoint> droppable;
};

EpsilonConstraints epsilon_constraints(const std::vector<BranchInvariants>& ys, int gY);

/// Multiplicity counts read off a decomposition.
struct EpsilonValues {
  std::map<ProjPoint, int> eps1;
  int eps2 = 0;
  int eps3 = 0;
  int eps4 = 0;
  int eps5 = 0;
};

EpsilonValues extract_epsilons(const Decomposition& d);

/// Every epsilon constraint, including the rule for lambdas
/// missing from the module. Returns the violated statements (empty when all hold).
std::vector<std::string> check_epsilons(const Decomposition& d, const std::vector<BranchInvariants>& ys, int gY,
                                        const FieldCtx& ctx);

struct SpecialResult {
  std::optional<Decomposition> decomposition;
  std::vector<std::size_t> offending;  // indices into the branch list
};

SpecialResult decompose_special(const std::vector<BranchInvariants>& ys, int gY);

/// Per-point (l, a1, a2).
struct EllData {
  int ell = 1;
  int a1 = 0;
  int a2 = 0;
};
EllData ell_data(const BranchInvariants& y);

/// Complete decomposition over the projective line. Throws NotP1Base for gY != 0.
Decomposition decompose_p1(const std::vector<BranchInvariants>& ys, int gY = 0);

struct SumEllResult {
  bool holds = false;
  int bound = 0;
  std::optional<int> eps4;  // forced value when the criterion holds
};

SumEllResult check_sum_ell_criterion(const std::vector<BranchInvariants>& ys, int ell_sum);

/// True exactly when every N summand at y has dimension 2.
bool small_ell_predicate(const BranchInvariants& y);

/// {0, 1, inf} together with Lambda_br and two further field elements, sorted.
std::vector<ProjPoint> canonical_probes(const std::vector<BranchInvariants>& ys, const FieldCtx& ctx);

}  // namespace klein4
