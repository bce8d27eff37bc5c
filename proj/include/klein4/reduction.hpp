#pragma once

#include <map>

#include "klein4/ratfun.hpp"

namespace klein4 {

/// f rewritten as reduced + (s^2 - s) with every pole of `reduced` of odd order.
struct StandardForm {
  RatFun s;
  RatFun reduced;
  std::map<ProjPoint, int> pole_orders;
};

/// Cancels even-order leading terms pole by pole: infinity first, then finite
/// poles in bit-vector order.
StandardForm standard_form(const RatFun& f);

/// True when the reduced form is constant. Constants count as trivial since
/// every constant is s^2 - s over an algebraically closed field.
bool is_artin_schreier_trivial(const RatFun& f);

}  // namespace klein4
