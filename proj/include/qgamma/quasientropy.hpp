#pragma once

#include "qgamma/algebra.hpp"

namespace qgamma {

/// Spectral data of the relative modular operator of a state pair:
/// eigenvalues of both densities (all blocks concatenated) and the squared
/// eigenvector overlaps. The overlap matrix is block-diagonal across algebra
/// blocks and doubly stochastic for full bases. The Hilbert-Schmidt operator
/// itself is never materialized.
struct RelativeModularData {
  RealVector alphas;      // eigenvalues of the first density
  RealVector betas;       // eigenvalues of the second density
  Eigen::MatrixXd overlap;  // |<a_i|b_j>|^2
};

RelativeModularData relative_modular_data(const State& omega, const State& phi);

/// The operator convex weight function of the family, gamma in (0,1):
/// 1/gamma + t/(1-gamma) - t^gamma/(gamma(1-gamma)). Nonnegative, zero at 1.
double f_gamma(double t, double gamma);

/// Quasi-entropy with weight f_gamma, evaluated as the double spectral sum
/// with termwise limits on the kernels. Equals gamma_divergence.
double quasi_entropy_gamma(const State& omega, const State& phi, double gamma);

}  // namespace qgamma
