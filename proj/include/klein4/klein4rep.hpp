#pragma once

#include <array>
#include <vector>

#include "klein4/decomposition.hpp"
#include "klein4/linalg.hpp"

namespace klein4 {

/// A kG-module given by the actions S = sigma - 1 and T = tau - 1.
struct KleinModule {
  GfMatrix S;
  GfMatrix T;

  [[nodiscard]] int dim() const { return static_cast<int>(S.rows()); }
};

/// Throws InvariantViolation unless S^2 = T^2 = 0 and ST = TS.
void check_invariants(const KleinModule& m);

KleinModule build_indecomposable(const IndecLabel& label, const FieldCtx& ctx);
KleinModule direct_sum(const std::vector<KleinModule>& parts);
KleinModule build(const Decomposition& d, const FieldCtx& ctx);
/// P^{-1} S P, P^{-1} T P.
KleinModule change_basis(const KleinModule& m, const GfMatrix& P);

/// Dimensions of U4/U3, U3/U2, U2/U1, U1 for the probe direction lambda.
struct SubquotientDims {
  int d43 = 0;
  int d32 = 0;
  int d21 = 0;
  int d10 = 0;
};
bool operator==(const SubquotientDims& x, const SubquotientDims& y);
SubquotientDims& operator+=(SubquotientDims& x, const SubquotientDims& y);

SubquotientDims filtration_subquotient_dims(const KleinModule& m, const ProjPoint& probe);

/// Krull-Schmidt decomposition. Throws FieldTooSmall when the regular part has
/// eigenvalues outside the field or no usable shift exists.
Decomposition decompose(const KleinModule& m, const FieldCtx& ctx);

/// {l, 1/l, 1+l, 1/(1+l), l/(1+l), (1+l)/l} without repetitions, sorted.
std::vector<ProjPoint> cohort(const ProjPoint& lambda, const FieldCtx& ctx);

enum class Involution { Sigma, Tau, SigmaTau };

/// g - 1 for g in {sigma, tau, sigma tau}.
GfMatrix action_minus_one(const KleinModule& m, Involution g);

/// The module on the same space where g acts as xi[g] (indexed by Involution).
/// Throws NotAutomorphism unless xi permutes the three involutions.
KleinModule relabel(const KleinModule& m, const std::array<Involution, 3>& xi);

/// Module on which rho1 - 1 acts as X1 and rho2 - 1 as X2, for generators rho1 != rho2.
KleinModule from_generator_pair(const GfMatrix& X1, const GfMatrix& X2, Involution rho1, Involution rho2);

}  // namespace klein4
