#pragma once

#include "qgamma/algebra.hpp"

namespace qgamma {

/// Numerical slack under which a divergence is clamped to zero.
inline constexpr double kDivergenceSlack = 1e-9;

/// Value of a deviation functional: a nonnegative real or an explicit
/// infinity marker (support violation at the boundary indices).
struct DivergenceValue {
  double value = 0.0;
  double gamma = 0.0;
  bool infinite = false;

  static DivergenceValue finite(double v, double gamma);
  static DivergenceValue infinity(double gamma);

  double value_or_inf() const;
};

/// The gamma-family deviation for gamma in (0,1). The cross term is
/// evaluated in the symmetrized product form so it is real and nonnegative
/// in floating point.
DivergenceValue gamma_divergence(const State& omega, const State& phi, double gamma);

/// Boundary member at gamma = 0, extended to non-normalized states:
/// tr(rho_omega) - tr(rho_phi) + tr(rho_phi (log rho_phi - log rho_omega))
/// when supp(phi) <= supp(omega), infinity otherwise.
DivergenceValue relative_entropy_0(const State& omega, const State& phi);

/// Boundary member at gamma = 1: relative_entropy_0 with swapped arguments.
DivergenceValue relative_entropy_1(const State& omega, const State& phi);

/// Scalar closed form on finite positive weight vectors; agrees with
/// gamma_divergence on the diagonal embedding.
DivergenceValue classical_gamma_divergence(const std::vector<double>& p,
                                           const std::vector<double>& q, double gamma);

/// Residual of the generalised cosine identity; identically zero up to
/// roundoff for every state triple.
double cosine_residual(const State& omega, const State& phi, const State& psi, double gamma);

}  // namespace qgamma
