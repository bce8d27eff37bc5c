#include "klein4/field.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <tuple>
#include <unordered_map>

namespace klein4 {

namespace {

struct DefaultModulus {
  int degree;
  std::uint64_t tail;
  std::initializer_list<std::uint64_t> primes;  // distinct prime factors of 2^n - 1
};

// Lowest-weight primitive polynomials, numerically smallest among equal weight.
const DefaultModulus kDefaults[] = {
    {1, 0x1ULL, {}},
    {2, 0x3ULL, {3ULL}},
    {3, 0x3ULL, {7ULL}},
    {4, 0x3ULL, {3ULL, 5ULL}},
    {5, 0x5ULL, {31ULL}},
    {6, 0x3ULL, {3ULL, 7ULL}},
    {7, 0x3ULL, {127ULL}},
    {8, 0x1dULL, {3ULL, 5ULL, 17ULL}},
    {9, 0x11ULL, {7ULL, 73ULL}},
    {10, 0x9ULL, {3ULL, 11ULL, 31ULL}},
    {11, 0x5ULL, {23ULL, 89ULL}},
    {12, 0x53ULL, {3ULL, 5ULL, 7ULL, 13ULL}},
    {13, 0x1bULL, {8191ULL}},
    {14, 0x2bULL, {3ULL, 43ULL, 127ULL}},
    {15, 0x3ULL, {7ULL, 31ULL, 151ULL}},
    {16, 0x2dULL, {3ULL, 5ULL, 17ULL, 257ULL}},
    {17, 0x9ULL, {131071ULL}},
    {18, 0x81ULL, {3ULL, 7ULL, 19ULL, 73ULL}},
    {19, 0x27ULL, {524287ULL}},
    {20, 0x9ULL, {3ULL, 5ULL, 11ULL, 31ULL, 41ULL}},
    {21, 0x5ULL, {7ULL, 127ULL, 337ULL}},
    {22, 0x3ULL, {3ULL, 23ULL, 89ULL, 683ULL}},
    {23, 0x21ULL, {47ULL, 178481ULL}},
    {24, 0x1bULL, {3ULL, 5ULL, 7ULL, 13ULL, 17ULL, 241ULL}},
    {25, 0x9ULL, {31ULL, 601ULL, 1801ULL}},
    {26, 0x47ULL, {3ULL, 2731ULL, 8191ULL}},
    {27, 0x27ULL, {7ULL, 73ULL, 262657ULL}},
    {28, 0x9ULL, {3ULL, 5ULL, 29ULL, 43ULL, 113ULL, 127ULL}},
    {29, 0x5ULL, {233ULL, 1103ULL, 2089ULL}},
    {30, 0x53ULL, {3ULL, 7ULL, 11ULL, 31ULL, 151ULL, 331ULL}},
    {31, 0x9ULL, {2147483647ULL}},
    {32, 0xc5ULL, {3ULL, 5ULL, 17ULL, 257ULL, 65537ULL}},
    {33, 0x2001ULL, {7ULL, 23ULL, 89ULL, 599479ULL}},
    {34, 0x119ULL, {3ULL, 43691ULL, 131071ULL}},
    {35, 0x5ULL, {31ULL, 71ULL, 127ULL, 122921ULL}},
    {36, 0x801ULL, {3ULL, 5ULL, 7ULL, 13ULL, 19ULL, 37ULL, 73ULL, 109ULL}},
    {37, 0x53ULL, {223ULL, 616318177ULL}},
    {38, 0x63ULL, {3ULL, 174763ULL, 524287ULL}},
    {39, 0x11ULL, {7ULL, 79ULL, 8191ULL, 121369ULL}},
    {40, 0x39ULL, {3ULL, 5ULL, 11ULL, 17ULL, 31ULL, 41ULL, 61681ULL}},
    {41, 0x9ULL, {13367ULL, 164511353ULL}},
    {42, 0x99ULL, {3ULL, 7ULL, 43ULL, 127ULL, 337ULL, 5419ULL}},
    {43, 0x59ULL, {431ULL, 9719ULL, 2099863ULL}},
    {44, 0x65ULL, {3ULL, 5ULL, 23ULL, 89ULL, 397ULL, 683ULL, 2113ULL}},
    {45, 0x1bULL, {7ULL, 31ULL, 73ULL, 151ULL, 631ULL, 23311ULL}},
    {46, 0x1c1ULL, {3ULL, 47ULL, 178481ULL, 2796203ULL}},
    {47, 0x21ULL, {2351ULL, 4513ULL, 13264529ULL}},
    {48, 0x291ULL, {3ULL, 5ULL, 7ULL, 13ULL, 17ULL, 97ULL, 241ULL, 257ULL, 673ULL}},
    {49, 0x201ULL, {127ULL, 4432676798593ULL}},
    {50, 0x1dULL, {3ULL, 11ULL, 31ULL, 251ULL, 601ULL, 1801ULL, 4051ULL}},
    {51, 0x4bULL, {7ULL, 103ULL, 2143ULL, 11119ULL, 131071ULL}},
    {52, 0x9ULL, {3ULL, 5ULL, 53ULL, 157ULL, 1613ULL, 2731ULL, 8191ULL}},
    {53, 0x47ULL, {6361ULL, 69431ULL, 20394401ULL}},
    {54, 0x149ULL, {3ULL, 7ULL, 19ULL, 73ULL, 87211ULL, 262657ULL}},
    {55, 0x1000001ULL, {23ULL, 31ULL, 89ULL, 881ULL, 3191ULL, 201961ULL}},
    {56, 0x95ULL, {3ULL, 5ULL, 17ULL, 29ULL, 43ULL, 113ULL, 127ULL, 15790321ULL}},
    {57, 0x81ULL, {7ULL, 32377ULL, 524287ULL, 1212847ULL}},
    {58, 0x80001ULL, {3ULL, 59ULL, 233ULL, 1103ULL, 2089ULL, 3033169ULL}},
    {59, 0x95ULL, {179951ULL, 3203431780337ULL}},
    {60, 0x3ULL, {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 31ULL, 41ULL, 61ULL, 151ULL, 331ULL, 1321ULL}},
    {61, 0x27ULL, {2305843009213693951ULL}},
    {62, 0x69ULL, {3ULL, 715827883ULL, 2147483647ULL}},
    {63, 0x3ULL, {7ULL, 73ULL, 127ULL, 337ULL, 92737ULL, 649657ULL}},
    {64, 0x1bULL, {3ULL, 5ULL, 17ULL, 257ULL, 641ULL, 65537ULL, 6700417ULL}},
};

constexpr std::uint64_t kMaxBsgsPrime = std::uint64_t{1} << 40;

std::uint64_t mask_for(int n) { return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

int deg64(std::uint64_t a) { return a == 0 ? -1 : 63 - __builtin_clzll(a); }

// Binary polynomial remainder a mod b, b != 0.
std::uint64_t pmod(std::uint64_t a, std::uint64_t b) {
  const int db = deg64(b);
  for (int da = deg64(a); da >= db; da = deg64(a)) a ^= b << (da - db);
  return a;
}

std::uint64_t pgcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = pmod(a, b);
    std::swap(a, b);
  }
  return a;
}

// (x^n + tail) mod r for a nonzero r of degree < n.
std::uint64_t modulus_mod(int n, std::uint64_t tail, std::uint64_t r) {
  std::uint64_t acc = 1;
  const int dr = deg64(r);
  for (int i = 0; i < n; ++i) {
    acc <<= 1;
    if (deg64(acc) == dr) acc ^= r;
  }
  return acc ^ pmod(tail, r);
}

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int p = 2; p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  return out;
}

std::vector<std::uint64_t> factor_small(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      out.push_back(p);
      while (v % p == 0) v /= p;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0;
  __int128 nt = 1;
  __int128 r = m;
  __int128 nr = a % m;
  while (nr != 0) {
    const __int128 q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_irreducible_binary(int degree, std::uint64_t tail) {
  if (degree < 1 || degree > 64) return false;
  if (degree < 64 && (tail >> degree) != 0) return false;
  if ((tail & 1U) == 0) return degree == 1;  // divisible by x
  // Rabin: x^(2^n) = x mod f and gcd(x^(2^(n/d)) - x, f) = 1 for primes d | n.
  const auto sq = [&](std::uint64_t a) {
    std::uint64_t r = 0;
    std::uint64_t b = a;
    std::uint64_t s = a;
    for (int i = 0; i < degree && b != 0; ++i, b >>= 1) {
      if (b & 1U) r ^= s;
      const bool carry = ((s >> (degree - 1)) & 1U) != 0;
      s = (degree == 64 ? s << 1 : (s << 1) & mask_for(degree));
      if (carry) s ^= tail;
    }
    return r;
  };
  const std::uint64_t x = degree == 1 ? tail : 2;  // x mod f
  const auto frob = [&](int k) {
    std::uint64_t a = x;
    for (int i = 0; i < k; ++i) a = sq(a);
    return a;
  };
  if (frob(degree) != x) return false;
  for (int d : prime_divisors(degree)) {
    const std::uint64_t h = frob(degree / d) ^ x;
    if (h == 0) return false;
    if (pgcd(h, modulus_mod(degree, tail, h)) != 1) return false;
  }
  return true;
}

FieldCtx::FieldCtx(int degree, std::uint64_t tail)
    : degree_(degree), tail_(tail), mask_(mask_for(degree)) {
  for (const auto& d : kDefaults) {
    if (d.degree == degree) primes_.assign(d.primes.begin(), d.primes.end());
  }
  if (degree == 1) {
    generator_ = 1;
  } else {
    for (std::uint64_t c = 2; c <= mask_; ++c) {
      if (has_full_order(c)) {
        generator_ = c;
        break;
      }
    }
  }
  if (degree <= 16) {
    const std::size_t ord = mask_;
    exp_.resize(2 * ord);
    log_.assign(ord + 1, 0);
    std::uint64_t a = 1;
    for (std::size_t i = 0; i < ord; ++i) {
      exp_[i] = static_cast<std::uint32_t>(a);
      exp_[i + ord] = static_cast<std::uint32_t>(a);
      log_[a] = static_cast<std::uint32_t>(i);
      a = mul_slow(a, generator_);
    }
  }
}

std::shared_ptr<const FieldCtx> FieldCtx::make(int degree) {
  for (const auto& d : kDefaults) {
    if (d.degree == degree) return make(degree, d.tail);
  }
  throw Error(ErrorKind::InvalidArgument, "field degree must be in 1..64, got " + std::to_string(degree));
}

std::shared_ptr<const FieldCtx> FieldCtx::make(int degree, std::uint64_t modulus_tail) {
  if (!is_irreducible_binary(degree, modulus_tail)) {
    throw Error(ErrorKind::InvalidArgument, "modulus is not an irreducible polynomial of degree " +
                                                std::to_string(degree));
  }
  return std::shared_ptr<const FieldCtx>(new FieldCtx(degree, modulus_tail));
}

std::uint64_t FieldCtx::mul_slow(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t r = 0;
  const std::uint64_t top = std::uint64_t{1} << (degree_ - 1);
  while (b != 0) {
    if (b & 1U) r ^= a;
    b >>= 1;
    const bool carry = (a & top) != 0;
    a = (a << 1) & mask_;
    if (carry) a ^= tail_;
  }
  return r;
}

std::uint64_t FieldCtx::mul_bits(std::uint64_t a, std::uint64_t b) const {
  if (a == 0 || b == 0) return 0;
  if (!exp_.empty()) return exp_[log_[a] + log_[b]];
  return mul_slow(a, b);
}

std::uint64_t FieldCtx::pow_bits(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1U) r = mul_bits(r, a);
    a = mul_bits(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t FieldCtx::inv_bits(std::uint64_t a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (!exp_.empty()) return exp_[(mask_ - log_[a]) % mask_];
  return pow_bits(a, mask_ - 1);
}

bool FieldCtx::has_full_order(std::uint64_t a) const {
  if (a == 0) return false;
  std::vector<std::uint64_t> primes = primes_;
  if (primes.empty() && degree_ > 1) primes = factor_small(mask_);
  return std::all_of(primes.begin(), primes.end(),
                     [&](std::uint64_t p) { return pow_bits(a, mask_ / p) != 1; });
}

Gf FieldCtx::gen_pow(std::int64_t k) const {
  const auto ord = static_cast<__int128>(mask_);
  __int128 e = k % ord;
  if (e < 0) e += ord;
  return {pow_bits(generator_, static_cast<std::uint64_t>(e)), this};
}

std::optional<std::uint64_t> FieldCtx::log(const Gf& a) const {
  if (a.bits == 0) return std::nullopt;
  if (!exp_.empty()) return log_[a.bits];
  return log_generic(a.bits);
}

// Pohlig-Hellman over the prime factorization of 2^n - 1, baby-step giant-step per prime.
std::optional<std::uint64_t> FieldCtx::log_generic(std::uint64_t a) const {
  std::vector<std::uint64_t> primes = primes_;
  if (primes.empty()) primes = factor_small(mask_);
  if (std::any_of(primes.begin(), primes.end(), [](std::uint64_t p) { return p > kMaxBsgsPrime; })) {
    return std::nullopt;
  }
  const std::uint64_t n = mask_;
  std::uint64_t x = 0;
  std::uint64_t modulus = 1;
  for (std::uint64_t p : primes) {
    std::uint64_t pe = 1;
    int e = 0;
    for (std::uint64_t r = n; r % p == 0; r /= p) {
      pe *= p;
      ++e;
    }
    const std::uint64_t gamma = pow_bits(generator_, n / p);
    const auto step = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(p)))) + 1;
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    baby.reserve(step * 2);
    std::uint64_t cur = 1;
    for (std::uint64_t j = 0; j < step; ++j) {
      baby.emplace(cur, j);
      cur = mul_bits(cur, gamma);
    }
    const std::uint64_t giant = inv_bits(pow_bits(gamma, step));
    std::uint64_t xk = 0;
    std::uint64_t pk = 1;
    for (int k = 0; k < e; ++k) {
      const std::uint64_t hk = pow_bits(mul_bits(inv_bits(pow_bits(generator_, xk)), a), n / (pk * p));
      std::optional<std::uint64_t> d;
      std::uint64_t y = hk;
      for (std::uint64_t i = 0; i <= step && !d; ++i) {
        if (auto it = baby.find(y); it != baby.end()) d = i * step + it->second;
        y = mul_bits(y, giant);
      }
      if (!d) return std::nullopt;
      xk += *d * pk;
      pk *= p;
    }
    // CRT merge of x mod modulus with xk mod pe.
    const std::uint64_t t = mulmod((xk + pe - x % pe) % pe, invmod(modulus % pe, pe), pe);
    x += modulus * t;
    modulus *= pe;
  }
  return x % n;
}

std::string FieldCtx::power_literal(const Gf& a) const {
  if (a.bits == 0) return "0";
  if (a.bits == 1) return "1";
  if (auto k = log(a)) return "g^" + std::to_string(*k);
  return bit_literal(a);
}

std::string FieldCtx::bit_literal(const Gf& a) const {
  std::string s = "[";
  for (int i = degree_ - 1; i >= 0; --i) s.push_back(((a.bits >> i) & 1U) ? '1' : '0');
  s.push_back(']');
  return s;
}

namespace {
const FieldCtx* pick_ctx(const Gf& a, const Gf& b) { return a.ctx != nullptr ? a.ctx : b.ctx; }
}  // namespace

Gf operator*(const Gf& a, const Gf& b) {
  const FieldCtx* c = pick_ctx(a, b);
  if (a.bits <= 1 || b.bits <= 1) return {a.bits * b.bits == 0 ? 0 : (a.bits > 1 ? a.bits : b.bits), c};
  return {c->mul_bits(a.bits, b.bits), c};
}

Gf inverse(const Gf& a) {
  if (a.bits == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (a.bits == 1) return a;
  return {a.ctx->inv_bits(a.bits), a.ctx};
}

Gf operator/(const Gf& a, const Gf& b) {
  Gf inv = inverse(b);
  if (inv.ctx == nullptr) inv.ctx = a.ctx;
  return a * inv;
}

Gf& Gf::operator*=(const Gf& o) { return *this = *this * o; }
Gf& Gf::operator/=(const Gf& o) { return *this = *this / o; }

Gf square(const Gf& a) { return a * a; }

Gf pow(const Gf& a, std::uint64_t e) {
  Gf r(1);
  r.ctx = a.ctx;
  Gf b = a;
  while (e != 0) {
    if (e & 1U) r *= b;
    b = square(b);
    e >>= 1;
  }
  return r;
}

Gf sqrt(const Gf& a) {
  if (a.bits <= 1) return a;
  Gf r = a;
  for (int i = 1; i < a.ctx->degree(); ++i) r = square(r);
  return r;
}

int trace(const Gf& a, const FieldCtx& ctx) {
  Gf s = a;
  Gf t = a;
  for (int i = 1; i < ctx.degree(); ++i) {
    t = square(t);
    s += t;
  }
  return static_cast<int>(s.bits & 1U);
}

}  // namespace klein4
