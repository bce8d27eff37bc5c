#pragma once

#include <vector>

#include "klein4/cover.hpp"

namespace klein4 {

enum class BClass { B1, B2, B3 };
const char* to_string(BClass c);

/// Local invariants at one branch point.
struct LocalData {
  ProjPoint y;
  std::vector<Gf> b;  // b_0 .. b_{floor(m/4)}
  std::vector<Gf> a;  // a_0 .. a_{mu2 - mu1 - 1}
  LaurentJet p_jet;
  LaurentJet q_jet;
  LaurentJet beta_tilde;
  LaurentJet alpha_tilde;
  ProjPoint lambda;
  int delta = 0;
  BClass b_class = BClass::B1;
  int nu = 0;
};

/// b_j for 0 <= j <= floor(m/4) from the even-index coefficients.
std::vector<Gf> solve_b_coeffs(const LaurentJet& p_jet, const LaurentJet& q_jet, int m, int M);
/// a_j for 0 <= j < mu2 - mu1 from the odd-index coefficients.
std::vector<Gf> solve_a_coeffs(const LaurentJet& p_jet, const LaurentJet& q_jet, const std::vector<Gf>& b, int m,
                               int M);

/// The Artin-Schreier right-hand sides p_y, q_y of u_y, v_y.
const RatFun& local_p(const CoverAnalysis& a, const BranchPoint& bp);
const RatFun& local_q(const CoverAnalysis& a, const BranchPoint& bp);

LocalData classify(const CoverAnalysis& a, const BranchPoint& bp);
std::vector<LocalData> classify_all(const CoverAnalysis& a);

/// beta(j) = pi^{-nu} sum_{i <= j} b_i pi^i as a rational function.
RatFun beta_partial(const LocalData& ld, int j, const FieldCtx* ctx);
/// alpha~ as a rational function.
RatFun alpha_tilde(const LocalData& ld, const FieldCtx* ctx);

}  // namespace klein4
