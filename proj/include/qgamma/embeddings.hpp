#pragma once

#include "qgamma/algebra.hpp"

namespace qgamma {

/// Element of the L_{1/gamma} coordinate space: a block-diagonal Hermitian
/// matrix tagged with its embedding index. Vectors produced by ell_gamma are
/// PSD; the class itself only requires hermiticity so that dual-space
/// optimization can roam the full Hermitian part.
class GammaVector {
 public:
  GammaVector(double gamma, AlgebraShape shape, std::vector<Matrix> blocks);

  static GammaVector zero(double gamma, const AlgebraShape& shape);
  static GammaVector from_element(double gamma, const HermitianElement& x);

  double gamma() const { return gamma_; }
  const AlgebraShape& shape() const { return shape_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int b) const { return blocks_[static_cast<std::size_t>(b)]; }

  HermitianElement as_element() const;
  double frobenius_norm() const;

  GammaVector operator+(const GammaVector& o) const;
  GammaVector operator-(const GammaVector& o) const;
  GammaVector scaled(double factor) const;

 private:
  struct unchecked_t {};
  GammaVector(unchecked_t, double gamma, AlgebraShape shape, std::vector<Matrix> blocks);

  double gamma_;
  AlgebraShape shape_;
  std::vector<Matrix> blocks_;

  friend GammaVector gamma_vector_unchecked(double, AlgebraShape, std::vector<Matrix>);
};

GammaVector gamma_vector_unchecked(double gamma, AlgebraShape shape, std::vector<Matrix> blocks);

/// gamma-coordinate of a state: rho^gamma / gamma, for gamma in (0, 1].
GammaVector ell_gamma(const State& omega, double gamma);

/// Inverse embedding (gamma x)^(1/gamma); requires x PSD.
State ell_gamma_inverse(const GammaVector& x);

/// (sum over all eigenvalues of |lambda|^p)^(1/p), p >= 1.
double schatten_norm(const HermitianElement& x, double p);
double schatten_norm(const GammaVector& x, double p);

/// Convex potential of the gamma-coordinate space, gamma in (0, 1):
/// the 1/gamma power of the 1/gamma norm of gamma*x, divided by (1 - gamma).
/// Evaluated on general Hermitian x through absolute eigenvalues.
double psi_gamma(const GammaVector& x);

/// Real duality pairing between complementary coordinate spaces
/// (gamma and 1 - gamma): Re of the block trace of the product.
double pairing(const GammaVector& x, const GammaVector& y);

/// Dualiser of psi_gamma: maps the PSD cone at gamma homeomorphically onto
/// the PSD cone at 1 - gamma. Involutive across gamma <-> 1 - gamma.
GammaVector dualiser(const GammaVector& x);

/// Frechet gradient of psi_gamma at Hermitian x, living at index 1 - gamma.
/// Coincides with dualiser(x) on the PSD cone; extends oddly off it.
GammaVector psi_gamma_gradient(const GammaVector& x);

}  // namespace qgamma
