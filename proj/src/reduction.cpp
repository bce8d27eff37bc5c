#include "klein4/reduction.hpp"

namespace klein4 {

namespace {

// Strip even-order leading terms at y, accumulating the corrections into s.
void reduce_at(const ProjPoint& y, RatFun& f, RatFun& s) {
  const FieldCtx* ctx = f.ctx();
  const RatFun pi = uniformizer(y, ctx);
  for (int ord = ord_at(f, y); ord < 0 && ord % 2 == 0; ord = ord_at(f, y)) {
    const Gf c = laurent_at(f, y, ord + 1).at(ord);
    const RatFun h = sqrt(c) * pow(pi, ord / 2);
    f += square(h) + h;
    s += h;
  }
}

}  // namespace

StandardForm standard_form(const RatFun& f) {
  const FieldCtx* ctx = f.ctx();
  StandardForm out{RatFun(ctx), f, {}};
  reduce_at(ProjPoint::infinity(), out.reduced, out.s);
  for (const auto& [y, ord] : poles(f)) {
    if (!y.infinite) reduce_at(y, out.reduced, out.s);
  }
  out.pole_orders = poles(out.reduced);
  return out;
}

bool is_artin_schreier_trivial(const RatFun& f) { return standard_form(f).reduced.is_constant(); }

}  // namespace klein4
