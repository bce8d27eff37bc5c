#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "klein4/pipeline.hpp"

namespace klein4::testing {

/// A cover given by (p, q) together with its known decomposition.
struct Fixture {
  std::string name;
  std::shared_ptr<const FieldCtx> ctx;
  RatFun p;
  RatFun q;
  Decomposition expected;
};

/// Four branch points, one of each case type, over F_16.
Fixture four_point_cover();
/// n branch points of pole order 5 at g^3, ..., g^{n+2} in F_16.
Fixture quintic_poles_cover(int n);
/// T^4 - T = t^3 rewritten as p = t^3, q = alpha^2 t^3 over F_4.
Fixture f4_linear_cover();

/// Single branch point at infinity. Equal: m = M = 8d + 3. SmallP, SmallQ,
/// SmallR: m = 8d - 5 and M = 8d - 1 with p, q, p + q carrying the small order.
enum class Variant { Equal, SmallP, SmallQ, SmallR };
Fixture single_point_family(Variant v, int d);
const char* to_string(Variant v);

/// All of the above, with d <= max_d and n <= max_n.
std::vector<Fixture> all_fixtures(int max_d, int max_n);

/// Planned ramification data of one generated branch point.
struct PlannedPoint {
  ProjPoint y;
  int m = 0;
  int M = 0;
  CaseTag tag = CaseTag::I;
  int delta = 0;
  ProjPoint lambda;
};

struct GeneratedCover {
  RatFun p;
  RatFun q;
  std::vector<PlannedPoint> plan;
};

/// Random admissible cover with at most `max_points` branch points, m <= max_m
/// and M <= max_M. Every case type and every admissible delta can occur.
GeneratedCover random_cover(std::mt19937_64& rng, const std::shared_ptr<const FieldCtx>& ctx, int max_points = 3,
                            int max_m = 11, int max_M = 15);

Gf random_element(std::mt19937_64& rng, const FieldCtx& ctx);
Gf random_nonzero(std::mt19937_64& rng, const FieldCtx& ctx);
ProjPoint random_point(std::mt19937_64& rng, const FieldCtx& ctx);
GfMatrix random_matrix(std::mt19937_64& rng, const FieldCtx& ctx, int rows, int cols);
GfMatrix random_invertible(std::mt19937_64& rng, const FieldCtx& ctx, int n);

/// A random label; N and M parameters use n in 1..max_n.
IndecLabel random_label(std::mt19937_64& rng, const FieldCtx& ctx, int max_n);
/// Random summands until the next one would exceed max_dim or max_summands is reached.
Decomposition random_decomposition(std::mt19937_64& rng, const FieldCtx& ctx, int max_dim, int max_summands,
                                   int max_n = 6);

/// Subquotient dimensions (U4/U3, U3/U2, U2/U1, U1) of an indecomposable,
/// tabulated by hand for a probe direction.
SubquotientDims table_row(const IndecLabel& l, const ProjPoint& probe);
/// Table rows summed over a decomposition.
SubquotientDims table_sum(const Decomposition& d, const ProjPoint& probe);

}  // namespace klein4::testing
