#pragma once

#include <map>
#include <string>

#include "klein4/ratfun.hpp"

namespace klein4 {

enum class IndecKind { Triv, Free, N, M1, M2 };
const char* to_string(IndecKind k);

/// Isomorphism class of an indecomposable kG-module. `dim` is the module
/// dimension (2n for N, 2n+1 for M1/M2); `lambda` is used by N only.
struct IndecLabel {
  IndecKind kind = IndecKind::Triv;
  int dim = 1;
  ProjPoint lambda;

  static IndecLabel triv() { return {IndecKind::Triv, 1, {}}; }
  static IndecLabel free() { return {IndecKind::Free, 4, {}}; }
  static IndecLabel n(int dim, const ProjPoint& lambda) { return {IndecKind::N, dim, lambda}; }
  static IndecLabel m1(int dim) { return {IndecKind::M1, dim, {}}; }
  static IndecLabel m2(int dim) { return {IndecKind::M2, dim, {}}; }
};

bool operator==(const IndecLabel& a, const IndecLabel& b);
/// Sorted by kind, then dimension, then lambda (infinity first).
bool operator<(const IndecLabel& a, const IndecLabel& b);

/// Label -> multiplicity. Zero multiplicities are never stored.
using Decomposition = std::map<IndecLabel, int>;

void add(Decomposition& d, const IndecLabel& l, int mult = 1);
int total_dim(const Decomposition& d);
std::string to_string(const IndecLabel& l, const FieldCtx& ctx);
/// "N(2,inf) + M1(3)^3 + Triv" style.
std::string to_string(const Decomposition& d, const FieldCtx& ctx);

}  // namespace klein4
