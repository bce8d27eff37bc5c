#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "klein4/field.hpp"

namespace klein4 {

/// Univariate polynomial over F_{2^n}, coefficients lowest degree first,
/// no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const FieldCtx* ctx) : ctx_(ctx) {}
  Poly(std::vector<Gf> coeffs, const FieldCtx* ctx);

  static Poly constant(const Gf& c, const FieldCtx* ctx);
  static Poly monomial(const Gf& c, int degree, const FieldCtx* ctx);
  /// The linear polynomial t - mu.
  static Poly linear(const Gf& mu, const FieldCtx* ctx);

  [[nodiscard]] const FieldCtx* ctx() const { return ctx_; }
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  [[nodiscard]] Gf coeff(int i) const;
  [[nodiscard]] Gf lead() const { return c_.empty() ? Gf(0) : c_.back(); }
  [[nodiscard]] const std::vector<Gf>& coeffs() const { return c_; }

  [[nodiscard]] Gf operator()(const Gf& x) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o) { return *this += o; }
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Gf& c);

 private:
  void trim();
  std::vector<Gf> c_;
  const FieldCtx* ctx_ = nullptr;
};

bool operator==(const Poly& a, const Poly& b);
inline bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
inline Poly operator+(Poly a, const Poly& b) { return a += b; }
inline Poly operator-(Poly a, const Poly& b) { return a += b; }
inline Poly operator*(Poly a, const Poly& b) { return a *= b; }
inline Poly operator*(Poly a, const Gf& c) { return a *= c; }
inline Poly operator*(const Gf& c, Poly a) { return a *= c; }

/// Quotient and remainder; throws DivisionByZeroPoly for b = 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

Poly monic(const Poly& a);
/// Monic gcd (zero when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly derivative(const Poly& a);
Poly pow(const Poly& a, int e);
Poly powmod(const Poly& a, std::uint64_t e, const Poly& m);
/// a(t + mu).
Poly taylor_shift(const Poly& a, const Gf& mu);
/// t^d a(1/t); requires d >= deg a.
Poly reverse(const Poly& a, int d);
/// Largest k with (t - mu)^k | a; a != 0.
int multiplicity(const Poly& a, const Gf& mu);

/// Distinct roots in F_{2^n}, sorted by bit-vector.
std::vector<Gf> roots(const Poly& a);
/// Full factorization into linear factors: root -> multiplicity. Throws
/// NonSplitDenominator naming a monic irreducible factor of degree > 1.
std::map<Gf, int> split_linear(const Poly& a);
/// A monic irreducible factor of degree > 1, or the zero polynomial if `a`
/// splits completely.
Poly nonlinear_irreducible_factor(const Poly& a);

/// Canonical printing: highest degree first, "c*t^k" terms joined by " + ".
std::string to_string(const Poly& a, const std::string& var = "t");

}  // namespace klein4
