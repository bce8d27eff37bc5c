#pragma once

#include <array>
#include <vector>

#include "klein4/klein4rep.hpp"
#include "klein4/local.hpp"

namespace klein4 {

/// c[0] + c[1] u~ + c[2] v~ + c[3] u~ v~ in k(X).
struct FunctionFieldElement {
  std::array<RatFun, 4> c;

  [[nodiscard]] bool is_zero() const;
};

bool operator==(const FunctionFieldElement& a, const FunctionFieldElement& b);
FunctionFieldElement operator+(const FunctionFieldElement& a, const FunctionFieldElement& b);
FunctionFieldElement operator*(const RatFun& s, const FunctionFieldElement& a);

/// k(X) = k(t)[u~, v~] with u~^2 = u~ + p~ and v~^2 = v~ + q~.
class FunctionField {
 public:
  explicit FunctionField(const CoverAnalysis& a);

  [[nodiscard]] const FieldCtx* ctx() const { return ctx_; }
  [[nodiscard]] FunctionFieldElement scalar(const RatFun& f) const;
  [[nodiscard]] FunctionFieldElement zero() const { return scalar(RatFun(ctx_)); }
  [[nodiscard]] FunctionFieldElement one() const;
  /// u~, v~ or (u+v)~ = u~ + v~ + e.
  [[nodiscard]] FunctionFieldElement generator(Role r) const;
  [[nodiscard]] FunctionFieldElement mul(const FunctionFieldElement& a, const FunctionFieldElement& b) const;
  /// g(a) for g in {sigma, tau, sigma tau}.
  [[nodiscard]] FunctionFieldElement act(Involution g, const FunctionFieldElement& a) const;

 private:
  const FieldCtx* ctx_;
  RatFun p_;
  RatFun q_;
  RatFun e_;
};

/// Local frame at a branch point: u_y, v_y, w~ and the inverse of the change
/// of basis to {1, u_y, w~, u_y w~}.
struct LocalFrame {
  std::size_t branch = 0;
  FunctionFieldElement u;
  FunctionFieldElement v;
  FunctionFieldElement w;
  std::array<std::array<RatFun, 4>, 4> to_local;
  std::array<int, 4> orders{};
};

LocalFrame local_frame(const FunctionField& K, const CoverAnalysis& a, const std::vector<LocalData>& locals,
                       std::size_t branch);

/// ord_x at the point above the frame's branch point. Throws ZeroElement.
int valuation(const FunctionFieldElement& f, const LocalFrame& frame, const CoverAnalysis& a);

/// w(j) = v_y + alpha~ + beta(j) u_y.
FunctionFieldElement partial_generator(const FunctionField& K, const CoverAnalysis& a, const LocalData& ld,
                                       std::size_t branch, int j);

struct BasisElement {
  std::size_t branch = 0;
  int family = 1;  // 1, 2, 3
  int index = 0;   // the exponent i in pi^{-i}
  FunctionFieldElement f;
};

struct BranchBasisInfo {
  int mu1 = 0;
  int mu2 = 0;
  int mu3 = 0;
  int nu = 0;
  int k = 0;
  int s = 0;
  std::size_t first = 0;  // position of the first element of this branch point
  std::size_t count = 0;
};

struct BasisSpec {
  std::vector<BranchBasisInfo> per_branch;
  std::vector<BasisElement> elements;

  [[nodiscard]] std::size_t size() const { return elements.size(); }
};

/// Throws NotP1Base unless the analysis is over the projective line.
BasisSpec build_basis(const FunctionField& K, const CoverAnalysis& a, const std::vector<LocalData>& locals);

/// f dt is regular everywhere on X.
bool verify_holomorphic(const FunctionFieldElement& f, const FunctionField& K, const CoverAnalysis& a,
                        const std::vector<LocalFrame>& frames);

std::vector<LocalFrame> local_frames(const FunctionField& K, const CoverAnalysis& a,
                                     const std::vector<LocalData>& locals);

/// sigma - 1 and tau - 1 in the basis, from the Galois action and an exact solve.
KleinModule action_matrices(const FunctionField& K, const BasisSpec& basis);

/// The same matrices assembled from the closed-form action table.
KleinModule action_matrices_table(const CoverAnalysis& a, const std::vector<LocalData>& locals,
                                  const BasisSpec& basis);

/// The 2 n_y dimensional block spanned by the lambda-part of one branch point,
/// from the C/D matrices, expressed in sigma, tau.
KleinModule lambda_block_module(const BranchPoint& bp, const LocalData& ld);

}  // namespace klein4
