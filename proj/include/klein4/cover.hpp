#pragma once

#include <memory>
#include <string>
#include <vector>

#include "klein4/reduction.hpp"

namespace klein4 {

inline int mu1(int m) { return (m + 3) / 4; }
inline int mu2(int m) { return (2 * m + 3) / 4; }
inline int mu3(int m) { return (3 * m + 3) / 4; }

enum class CaseTag { I, IIa, IIb, IIc };
const char* to_string(CaseTag t);

/// Which of u~, v~, (u+v)~ plays a local role.
enum class Role { U, V, UV };

/// The cover u^2 - u = p, v^2 - v = q, with r = p + q.
struct CoverSpec {
  std::shared_ptr<const FieldCtx> ctx;
  RatFun p;
  RatFun q;
  RatFun r;

  static CoverSpec make(std::shared_ptr<const FieldCtx> ctx, const RatFun& p, const RatFun& q);
};

/// t_old = (a t + b) / (c t + d).
struct Mobius {
  Gf a{1};
  Gf b{0};
  Gf c{0};
  Gf d{1};

  [[nodiscard]] bool is_identity() const { return a.is_one() && b.is_zero() && c.is_zero() && d.is_one(); }
  /// Image of a point of the new coordinate in the old coordinate.
  [[nodiscard]] ProjPoint apply(const ProjPoint& y) const;
  /// this ∘ (t -> (a' t + b') / (c' t + d')).
  [[nodiscard]] Mobius then(const Gf& a2, const Gf& b2, const Gf& c2, const Gf& d2) const;
};

struct BranchPoint {
  ProjPoint y;         // normalized coordinate
  ProjPoint original;  // input coordinate
  int m = 0;
  int M = 0;
  CaseTag tag = CaseTag::I;
  int m_p = 0;
  int m_q = 0;
  int m_r = 0;
  Role u_role = Role::U;
  Role v_role = Role::V;
  int different_exp = 0;

  [[nodiscard]] int nu() const { return (M - m) / 2; }
  /// k_y: -2 at infinity, 0 elsewhere.
  [[nodiscard]] int k() const { return y.infinite ? -2 : 0; }
  /// s(y): 0 at infinity, 1 elsewhere.
  [[nodiscard]] int s() const { return y.infinite ? 0 : 1; }
};

struct CoverAnalysis {
  CoverSpec input;
  CoverSpec spec;  // after normalization
  Mobius map;
  StandardForm sp;
  StandardForm sq;
  StandardForm sr;
  /// s_p + s_q + s_r, so that (u+v)~ = u~ + v~ + e.
  RatFun e;
  std::vector<BranchPoint> branch;  // canonical order of normalized points
  int genus_X = 0;
  int genus_Y = 0;

  [[nodiscard]] const FieldCtx* ctx() const { return spec.ctx.get(); }
};

/// Classify the branch points, normalizing so that infinity is a branch point
/// and 0 is not. Throws DegenerateCover, NotTotallyRamified, NotRamified.
CoverAnalysis analyze(const CoverSpec& spec);

/// Exactly one branch point.
bool katz_gabber_check(const CoverAnalysis& a);

}  // namespace klein4
