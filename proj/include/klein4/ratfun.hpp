#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "klein4/poly.hpp"

namespace klein4 {

/// Point of P^1 over F_{2^n}. The uniformizer is t - mu at a finite point and
/// 1/t at infinity.
struct ProjPoint {
  bool infinite = false;
  Gf mu;

  static ProjPoint finite(const Gf& m) { return {false, m}; }
  static ProjPoint infinity() { return {true, Gf(0)}; }
};

bool operator==(const ProjPoint& a, const ProjPoint& b);
inline bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
/// Canonical order: infinity first, then finite points by bit-vector.
bool operator<(const ProjPoint& a, const ProjPoint& b);

/// Order returned for the zero function.
inline constexpr int kInfiniteOrder = INT_MAX;

/// Element of k(t) in canonical form: gcd(num, den) = 1, den monic.
class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(const FieldCtx* ctx);
  RatFun(Poly num, Poly den);
  RatFun(const Poly& num);  // NOLINT(google-explicit-constructor)

  static RatFun constant(const Gf& c, const FieldCtx* ctx);
  static RatFun t(const FieldCtx* ctx);

  [[nodiscard]] const Poly& num() const { return num_; }
  [[nodiscard]] const Poly& den() const { return den_; }
  [[nodiscard]] const FieldCtx* ctx() const { return num_.ctx() != nullptr ? num_.ctx() : den_.ctx(); }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  [[nodiscard]] bool is_polynomial() const { return den_.degree() == 0; }

  RatFun& operator+=(const RatFun& o);
  RatFun& operator-=(const RatFun& o) { return *this += o; }
  RatFun& operator*=(const RatFun& o);
  RatFun& operator/=(const RatFun& o);

 private:
  void canonicalize();
  Poly num_;
  Poly den_;
};

bool operator==(const RatFun& a, const RatFun& b);
inline bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }
inline RatFun operator+(RatFun a, const RatFun& b) { return a += b; }
inline RatFun operator-(RatFun a, const RatFun& b) { return a += b; }
inline RatFun operator*(RatFun a, const RatFun& b) { return a *= b; }
inline RatFun operator/(RatFun a, const RatFun& b) { return a /= b; }
RatFun operator*(const Gf& c, const RatFun& f);
RatFun pow(const RatFun& f, int e);
RatFun square(const RatFun& f);

/// f((a t + b) / (c t + d)); requires ad + bc != 0.
RatFun substitute_mobius(const RatFun& f, const Gf& a, const Gf& b, const Gf& c, const Gf& d);

/// Valuation at y; kInfiniteOrder for f = 0.
int ord_at(const RatFun& f, const ProjPoint& y);

/// The uniformizer at y as a rational function of t.
RatFun uniformizer(const ProjPoint& y, const FieldCtx* ctx);

/// Truncated Laurent series sum_{lead <= i < precision} c_i pi^i at a point.
struct LaurentJet {
  ProjPoint point;
  int lead = 0;
  std::vector<Gf> coeffs;
  int precision = 0;

  /// Coefficient of pi^i (zero outside the stored range; i must be < precision).
  [[nodiscard]] Gf at(int i) const;
  [[nodiscard]] bool is_zero() const { return coeffs.empty(); }
  /// Lowest exponent with a nonzero coefficient, or precision if none.
  [[nodiscard]] int order() const { return coeffs.empty() ? precision : lead; }
};

/// Expansion of f at y, exact modulo pi^prec.
LaurentJet laurent_at(const RatFun& f, const ProjPoint& y, int prec);

LaurentJet operator+(const LaurentJet& a, const LaurentJet& b);
LaurentJet operator*(const LaurentJet& a, const LaurentJet& b);
/// Re-sum as a rational function of t.
RatFun to_ratfun(const LaurentJet& j, const FieldCtx* ctx);
/// The monomial c pi^k known to precision prec.
LaurentJet jet_monomial(const ProjPoint& y, const Gf& c, int k, int prec);

/// Principal part at a finite pole mu: sum_k c[k-1] (t - mu)^{-k}.
struct PrincipalPart {
  Gf mu;
  std::vector<Gf> coeffs;
};

struct PartialFractions {
  Poly polynomial;
  std::vector<PrincipalPart> poles;  // sorted by bit-vector of mu
};

/// Throws NonSplitDenominator when the denominator does not split.
PartialFractions partial_fractions(const RatFun& f);
RatFun to_ratfun(const PartialFractions& pf, const FieldCtx* ctx);

/// Poles of f (with their orders), infinity first.
std::map<ProjPoint, int> poles(const RatFun& f);

std::string to_string(const RatFun& f);
std::string to_string(const ProjPoint& y, const FieldCtx& ctx);

}  // namespace klein4
