#include "klein4/parse.hpp"

#include <cctype>
#include <charconv>

namespace klein4 {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const FieldCtx& ctx, const Bindings& env) : s_(s), ctx_(ctx), env_(env) {}

  RatFun parse() {
    RatFun r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("'+', '-', '*', '/', '^' or end of input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    const std::string found = pos_ < s_.size() ? "'" + std::string(1, s_[pos_]) + "'" : "end of input";
    throw Error(ErrorKind::SyntaxError,
                "at position " + std::to_string(pos_) + ": expected " + expected + ", found " + found);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RatFun constant(const Gf& c) const { return RatFun::constant(c, &ctx_); }

  RatFun expr() {
    RatFun acc = term();
    while (eat('+') || eat('-')) acc += term();
    return acc;
  }

  RatFun term() {
    RatFun acc = unary();
    while (true) {
      if (eat('*')) {
        acc *= unary();
      } else if (eat('/')) {
        const std::size_t at = pos_;
        const RatFun d = unary();
        if (d.is_zero()) {
          throw Error(ErrorKind::DivisionByZeroPoly, "division by zero at position " + std::to_string(at));
        }
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  RatFun unary() {
    while (eat('-') || eat('+')) {
    }
    return factor();
  }

  long integer() {
    skip_ws();
    long v = 0;
    const char* b = s_.data() + pos_;
    const auto [ptr, ec] = std::from_chars(b, s_.data() + s_.size(), v);
    if (ec != std::errc() || ptr == b) fail("an integer");
    pos_ += static_cast<std::size_t>(ptr - b);
    return v;
  }

  RatFun factor() {
    const RatFun base_value = base();
    if (!eat('^')) return base_value;
    const bool neg = eat('-');
    const long e = integer();
    if (e > 1000000) fail("an exponent below 10^6");
    if (neg && base_value.is_zero()) {
      throw Error(ErrorKind::DivisionByZeroPoly, "negative power of zero at position " + std::to_string(pos_));
    }
    return pow(base_value, neg ? -static_cast<int>(e) : static_cast<int>(e));
  }

  RatFun base() {
    skip_ws();
    if (pos_ >= s_.size()) fail("'t', 'g', a constant, a name or '('");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFun r = expr();
      if (!eat(')')) fail("')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      const long v = integer();
      return constant(ctx_.element(static_cast<std::uint64_t>(v & 1)));
    }
    if (c == '[') {
      ++pos_;
      std::uint64_t bits = 0;
      int count = 0;
      while (pos_ < s_.size() && (s_[pos_] == '0' || s_[pos_] == '1')) {
        bits = (bits << 1U) | static_cast<std::uint64_t>(s_[pos_] - '0');
        ++pos_;
        ++count;
      }
      if (count == 0 || count > ctx_.degree()) fail("between 1 and " + std::to_string(ctx_.degree()) + " bits");
      if (pos_ >= s_.size() || s_[pos_] != ']') fail("']'");
      ++pos_;
      return constant(ctx_.element(bits));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) != 0 || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "t") return RatFun::t(&ctx_);
      if (name == "g") return constant(ctx_.generator());
      const auto it = env_.find(name);
      if (it == env_.end()) {
        throw Error(ErrorKind::UnknownSymbol, "unknown symbol '" + name + "' at position " + std::to_string(start));
      }
      return it->second;
    }
    fail("'t', 'g', a constant, a name or '('");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const FieldCtx& ctx_;
  const Bindings& env_;
};

}  // namespace

RatFun parse_expr(std::string_view src, const FieldCtx& ctx, const Bindings& env) {
  return Parser(src, ctx, env).parse();
}

ProjPoint parse_point(std::string_view src, const FieldCtx& ctx, const Bindings& env) {
  const auto b = src.find_first_not_of(" \t");
  const auto e = src.find_last_not_of(" \t");
  if (b != std::string_view::npos && src.substr(b, e - b + 1) == "inf") return ProjPoint::infinity();
  const RatFun f = parse_expr(src, ctx, env);
  if (!f.is_constant()) throw Error(ErrorKind::InvalidArgument, "'" + std::string(src) + "' is not a constant");
  return ProjPoint::finite(ctx.element(f.num().coeff(0).bits));
}

}  // namespace klein4
