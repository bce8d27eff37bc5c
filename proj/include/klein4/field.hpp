#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "klein4/error.hpp"

namespace klein4 {

class FieldCtx;

/// Element of F_{2^n}: coordinates in the power basis of the modulus root.
///
/// The context pointer may be null for the constants 0 and 1 (these are what
/// `Gf(int)` produces, e.g. for Eigen's `Scalar(0)` / `Scalar(1)`); any
/// arithmetic that needs the modulus takes it from whichever operand has one.
struct Gf {
  std::uint64_t bits = 0;
  const FieldCtx* ctx = nullptr;

  Gf() = default;
  // Image of an integer under Z -> F_2 -> F_{2^n}.
  Gf(int v) : bits(static_cast<std::uint64_t>(v) & 1U) {}  // NOLINT(google-explicit-constructor)
  Gf(std::uint64_t b, const FieldCtx* c) : bits(b), ctx(c) {}

  [[nodiscard]] bool is_zero() const { return bits == 0; }
  [[nodiscard]] bool is_one() const { return bits == 1; }

  Gf& operator+=(const Gf& o) {
    bits ^= o.bits;
    if (ctx == nullptr) ctx = o.ctx;
    return *this;
  }
  Gf& operator-=(const Gf& o) { return *this += o; }
  Gf& operator*=(const Gf& o);
  Gf& operator/=(const Gf& o);
};

inline bool operator==(const Gf& a, const Gf& b) { return a.bits == b.bits; }
inline bool operator!=(const Gf& a, const Gf& b) { return a.bits != b.bits; }
// Canonical bit-vector order; used for deterministic output only.
inline bool operator<(const Gf& a, const Gf& b) { return a.bits < b.bits; }

inline Gf operator+(Gf a, const Gf& b) { return a += b; }
inline Gf operator-(Gf a, const Gf& b) { return a += b; }
inline Gf operator-(const Gf& a) { return a; }
Gf operator*(const Gf& a, const Gf& b);
Gf operator/(const Gf& a, const Gf& b);

Gf inverse(const Gf& a);
Gf square(const Gf& a);
Gf sqrt(const Gf& a);
Gf pow(const Gf& a, std::uint64_t e);
/// Absolute trace F_{2^n} -> F_2.
int trace(const Gf& a, const FieldCtx& ctx);

/// Immutable description of F_{2^n}: modulus, generator, and (for n <= 16)
/// log/antilog tables.
class FieldCtx {
 public:
  /// Default modulus: lowest-weight primitive polynomial, numerically
  /// smallest among those (1 <= n <= 64).
  static std::shared_ptr<const FieldCtx> make(int degree);
  /// Explicit modulus x^n + tail; throws SyntaxError unless irreducible.
  static std::shared_ptr<const FieldCtx> make(int degree, std::uint64_t modulus_tail);

  [[nodiscard]] int degree() const { return degree_; }
  /// Modulus without its leading x^n term.
  [[nodiscard]] std::uint64_t modulus_tail() const { return tail_; }
  /// 2^n - 1, also the coordinate mask.
  [[nodiscard]] std::uint64_t mask() const { return mask_; }

  [[nodiscard]] Gf zero() const { return {0, this}; }
  [[nodiscard]] Gf one() const { return {1, this}; }
  [[nodiscard]] Gf generator() const { return {generator_, this}; }
  /// Element with the given coordinate bits (masked to n bits).
  [[nodiscard]] Gf element(std::uint64_t bits) const { return {bits & mask_, this}; }
  /// g^k for the fixed generator g.
  [[nodiscard]] Gf gen_pow(std::int64_t k) const;
  /// Discrete logarithm to base g. Returns nullopt for 0, or when the
  /// multiplicative group order has a prime factor too large for BSGS.
  [[nodiscard]] std::optional<std::uint64_t> log(const Gf& a) const;

  [[nodiscard]] const std::vector<std::uint64_t>& order_prime_factors() const { return primes_; }

  // Raw arithmetic on coordinate bits.
  [[nodiscard]] std::uint64_t mul_bits(std::uint64_t a, std::uint64_t b) const;
  [[nodiscard]] std::uint64_t inv_bits(std::uint64_t a) const;

  /// "0", "1" or "g^k" (falls back to the bit-vector form when log is unavailable).
  [[nodiscard]] std::string power_literal(const Gf& a) const;
  /// "[b_{n-1}..b_0]" most significant coordinate first.
  [[nodiscard]] std::string bit_literal(const Gf& a) const;

  FieldCtx(const FieldCtx&) = delete;
  FieldCtx& operator=(const FieldCtx&) = delete;
  FieldCtx(FieldCtx&&) = delete;
  FieldCtx& operator=(FieldCtx&&) = delete;
  ~FieldCtx() = default;

 private:
  FieldCtx(int degree, std::uint64_t tail);

  [[nodiscard]] std::uint64_t mul_slow(std::uint64_t a, std::uint64_t b) const;
  [[nodiscard]] std::uint64_t pow_bits(std::uint64_t a, std::uint64_t e) const;
  [[nodiscard]] bool has_full_order(std::uint64_t a) const;
  [[nodiscard]] std::optional<std::uint64_t> log_generic(std::uint64_t a) const;

  int degree_;
  std::uint64_t tail_;
  std::uint64_t mask_;
  std::uint64_t generator_ = 1;
  std::vector<std::uint64_t> primes_;
  std::vector<std::uint32_t> exp_;  // exp_[i] = g^i, length 2*(2^n - 1)
  std::vector<std::uint32_t> log_;
};

/// Map c in F_{2^m} into F_{2^n} (m | n) by sending the modulus root of the
/// small field to the root (in canonical bit order) of the same polynomial in
/// the large field.
Gf embed_subfield(const Gf& c, const FieldCtx& small, const FieldCtx& large);

/// True when the binary polynomial x^n + tail is irreducible over F_2.
bool is_irreducible_binary(int degree, std::uint64_t tail);

}  // namespace klein4

namespace Eigen {

template <>
struct NumTraits<klein4::Gf> {
  using Real = klein4::Gf;
  using NonInteger = klein4::Gf;
  using Nested = klein4::Gf;
  using Literal = klein4::Gf;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 1,
    MulCost = 3
  };
  static inline int digits10() { return 0; }
  static inline klein4::Gf epsilon() { return {}; }
  static inline klein4::Gf dummy_precision() { return {}; }
  static inline klein4::Gf highest() { return {}; }
  static inline klein4::Gf lowest() { return {}; }
};

}  // namespace Eigen

namespace klein4 {

// ADL hooks Eigen expects from a custom scalar.
inline const Gf& conj(const Gf& x) { return x; }
inline const Gf& real(const Gf& x) { return x; }
inline Gf imag(const Gf&) { return {}; }
inline Gf abs2(const Gf& x) { return square(x); }

using GfMatrix = Eigen::Matrix<Gf, Eigen::Dynamic, Eigen::Dynamic>;
using GfVector = Eigen::Matrix<Gf, Eigen::Dynamic, 1>;

}  // namespace klein4
