#include "klein4/decomposition.hpp"

#include <tuple>

namespace klein4 {

const char* to_string(IndecKind k) {
  switch (k) {
    case IndecKind::Triv: return "Triv";
    case IndecKind::Free: return "Free";
    case IndecKind::N: return "N";
    case IndecKind::M1: return "M1";
    case IndecKind::M2: return "M2";
  }
  return "?";
}

bool operator==(const IndecLabel& a, const IndecLabel& b) {
  return a.kind == b.kind && a.dim == b.dim && (a.kind != IndecKind::N || a.lambda == b.lambda);
}

bool operator<(const IndecLabel& a, const IndecLabel& b) {
  if (std::tie(a.kind, a.dim) != std::tie(b.kind, b.dim)) return std::tie(a.kind, a.dim) < std::tie(b.kind, b.dim);
  return a.kind == IndecKind::N && a.lambda < b.lambda;
}

void add(Decomposition& d, const IndecLabel& l, int mult) {
  if (mult == 0) return;
  IndecLabel key = l;
  if (key.kind != IndecKind::N) key.lambda = {};
  if ((d[key] += mult) == 0) d.erase(key);
}

int total_dim(const Decomposition& d) {
  int s = 0;
  for (const auto& [l, k] : d) s += l.dim * k;
  return s;
}

std::string to_string(const IndecLabel& l, const FieldCtx& ctx) {
  switch (l.kind) {
    case IndecKind::Triv:
    case IndecKind::Free: return to_string(l.kind);
    case IndecKind::N: return "N(" + std::to_string(l.dim) + "," + to_string(l.lambda, ctx) + ")";
    case IndecKind::M1:
    case IndecKind::M2: return std::string(to_string(l.kind)) + "(" + std::to_string(l.dim) + ")";
  }
  return "?";
}

std::string to_string(const Decomposition& d, const FieldCtx& ctx) {
  if (d.empty()) return "0";
  std::string s;
  for (const auto& [l, k] : d) {
    if (!s.empty()) s += " + ";
    s += to_string(l, ctx);
    if (k != 1) s += "^" + std::to_string(k);
  }
  return s;
}

}  // namespace klein4
