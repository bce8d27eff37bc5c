#pragma once

#include <map>
#include <string>
#include <string_view>

#include "klein4/ratfun.hpp"

namespace klein4 {

using Bindings = std::map<std::string, RatFun>;

/// Parses an element of F_{2^n}(t).
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('-' | '+')* factor
///   factor := base ('^' ['-'] int)?
///   base   := 't' | 'g' | int | '[' bits ']' | name | '(' expr ')'
///
/// Integers are read modulo 2, '[...]' lists coordinates most significant
/// first, and `name` must be bound in `env`.
RatFun parse_expr(std::string_view src, const FieldCtx& ctx, const Bindings& env = {});

/// A constant or "inf".
ProjPoint parse_point(std::string_view src, const FieldCtx& ctx, const Bindings& env = {});

}  // namespace klein4
