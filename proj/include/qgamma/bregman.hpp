#pragma once

#include "qgamma/embeddings.hpp"

namespace qgamma {

/// Generalised Bregman deviation between complementary coordinate vectors:
/// psi_gamma(x) + psi_{1-gamma}(y) - pairing(x, y). Nonnegative; equals
/// gamma_divergence when x, y are the embeddings of a state pair.
double generalized_bregman(const GammaVector& x, const GammaVector& y);

/// Standard Bregman deviation between vectors at the same index, with the
/// gradient taken at the second argument:
/// psi(x) - psi(y) - pairing(x - y, dualiser(y)).
/// Requires y PSD (the dualiser domain); zero iff x = y.
double standard_bregman(const GammaVector& x, const GammaVector& y);

/// Young-Fenchel gap psi(x) + psi*(y) - pairing(x, y) with the conjugate
/// taken in closed form; nonnegative, zero iff y = dualiser(x).
double young_fenchel_residual(const GammaVector& x, const GammaVector& y);

/// Residual of the representation-index duality
/// std_bregman_gamma(y, x) - std_bregman_{1-gamma}(dualiser(x), dualiser(y));
/// zero up to roundoff for PSD x, y at the same index.
double representation_index_duality_residual(const GammaVector& x, const GammaVector& y);

struct FenchelOptions {
  /// Gradient-norm stopping threshold; defaults to the solver tolerance.
  double tol = qgamma::tol::solver();
  int max_iterations = 10000;
  /// Start the ascent from zero instead of the stationary dual point.
  bool cold_start = false;
};

struct FenchelEstimate {
  double value = 0.0;
  int iterations = 0;
  double gradient_residual = 0.0;
  bool converged = false;
};

/// Legendre-Fenchel conjugate of psi_gamma at y (a vector at index
/// 1-gamma), estimated by backtracking gradient ascent over Hermitian x.
/// For PSD y the estimate converges to psi_{1-gamma}(y). On iteration
/// exhaustion the best estimate is returned with its gradient residual.
FenchelEstimate fenchel_dual_estimate(const GammaVector& y, const FenchelOptions& opts = {});

}  // namespace qgamma
