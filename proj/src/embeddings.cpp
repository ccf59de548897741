#include "qgamma/embeddings.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace qgamma {

namespace {

constexpr double kGammaMatchTol = 1e-12;

void require_gamma_open(double gamma, const char* where) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    std::ostringstream msg;
    msg << where << ": gamma must lie in (0,1), got " << gamma;
    throw GammaOutOfRangeError(msg.str());
  }
}

void require_gamma_half_open(double gamma, const char* where) {
  if (!(gamma > 0.0) || !(gamma <= 1.0)) {
    std::ostringstream msg;
    msg << where << ": gamma must lie in (0,1], got " << gamma;
    throw GammaOutOfRangeError(msg.str());
  }
}

void require_complementary(const GammaVector& x, const GammaVector& y, const char* where) {
  if (std::abs(x.gamma() + y.gamma() - 1.0) > kGammaMatchTol) {
    std::ostringstream msg;
    msg << where << ": indices " << x.gamma() << " and " << y.gamma()
        << " are not complementary";
    throw GammaMismatchError(msg.str());
  }
  if (x.shape() != y.shape()) throw ShapeMismatchError(std::string(where) + ": shape mismatch");
}

}  // namespace

GammaVector::GammaVector(double gamma, AlgebraShape shape, std::vector<Matrix> blocks)
    : gamma_(gamma), shape_(std::move(shape)), blocks_(std::move(blocks)) {
  require_gamma_half_open(gamma_, "GammaVector");
  // Reuse the HermitianElement checks and symmetrization.
  HermitianElement elem(shape_, std::move(blocks_));
  blocks_ = elem.blocks();
}

GammaVector::GammaVector(unchecked_t, double gamma, AlgebraShape shape, std::vector<Matrix> blocks)
    : gamma_(gamma), shape_(std::move(shape)), blocks_(std::move(blocks)) {}

GammaVector gamma_vector_unchecked(double gamma, AlgebraShape shape, std::vector<Matrix> blocks) {
  return GammaVector(GammaVector::unchecked_t{}, gamma, std::move(shape), std::move(blocks));
}

GammaVector GammaVector::zero(double gamma, const AlgebraShape& shape) {
  require_gamma_half_open(gamma, "GammaVector::zero");
  return gamma_vector_unchecked(gamma, shape, HermitianElement::zero(shape).blocks());
}

GammaVector GammaVector::from_element(double gamma, const HermitianElement& x) {
  require_gamma_half_open(gamma, "GammaVector::from_element");
  return gamma_vector_unchecked(gamma, x.shape(), x.blocks());
}

HermitianElement GammaVector::as_element() const {
  return hermitian_unchecked(shape_, blocks_);
}

double GammaVector::frobenius_norm() const { return as_element().frobenius_norm(); }

GammaVector GammaVector::operator+(const GammaVector& o) const {
  if (std::abs(gamma_ - o.gamma_) > kGammaMatchTol) {
    throw GammaMismatchError("GammaVector::operator+: different indices");
  }
  return from_element(gamma_, as_element() + o.as_element());
}

GammaVector GammaVector::operator-(const GammaVector& o) const {
  if (std::abs(gamma_ - o.gamma_) > kGammaMatchTol) {
    throw GammaMismatchError("GammaVector::operator-: different indices");
  }
  return from_element(gamma_, as_element() - o.as_element());
}

GammaVector GammaVector::scaled(double factor) const {
  return from_element(gamma_, as_element().scaled(factor));
}

GammaVector ell_gamma(const State& omega, double gamma) {
  require_gamma_half_open(gamma, "ell_gamma");
  std::vector<Matrix> blocks;
  blocks.reserve(omega.blocks().size());
  for (std::size_t b = 0; b < omega.blocks().size(); ++b) {
    RealVector v = omega.eigenvalues()[b];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v[i] = v[i] > 0.0 ? std::pow(v[i], gamma) / gamma : 0.0;
    }
    const Matrix& u = omega.eigenvectors()[b];
    Matrix m = u * v.asDiagonal() * u.adjoint();
    blocks.push_back(0.5 * (m + m.adjoint()));
  }
  return gamma_vector_unchecked(gamma, omega.shape(), std::move(blocks));
}

State ell_gamma_inverse(const GammaVector& x) {
  const double gamma = x.gamma();
  SpectralDecomposition sd = spectral(x.as_element());
  std::vector<RealVector> vals = std::move(sd.eigenvalues);
  const double floor = tol::psd();
  for (RealVector& v : vals) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v[i] < -floor) {
        std::ostringstream msg;
        msg << "ell_gamma_inverse: eigenvalue " << v[i] << " is negative";
        throw NotPositiveError(msg.str());
      }
      v[i] = v[i] > 0.0 ? std::pow(gamma * v[i], 1.0 / gamma) : 0.0;
    }
  }
  return State::from_spectral(x.shape(), std::move(vals), std::move(sd.eigenvectors));
}

namespace {

double schatten_impl(const HermitianElement& x, double p) {
  if (!(p >= 1.0)) throw Error("schatten_norm: order must be >= 1");
  SpectralDecomposition sd = spectral(x);
  double s = 0.0;
  for (const RealVector& v : sd.eigenvalues) {
    for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v[i]), p);
  }
  return std::pow(s, 1.0 / p);
}

}  // namespace

double schatten_norm(const HermitianElement& x, double p) { return schatten_impl(x, p); }

double schatten_norm(const GammaVector& x, double p) { return schatten_impl(x.as_element(), p); }

double psi_gamma(const GammaVector& x) {
  const double gamma = x.gamma();
  require_gamma_open(gamma, "psi_gamma");
  SpectralDecomposition sd = spectral(x.as_element());
  double s = 0.0;
  for (const RealVector& v : sd.eigenvalues) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      s += std::pow(std::abs(gamma * v[i]), 1.0 / gamma);
    }
  }
  return s / (1.0 - gamma);
}

double pairing(const GammaVector& x, const GammaVector& y) {
  require_complementary(x, y, "pairing");
  double s = 0.0;
  for (std::size_t b = 0; b < x.blocks().size(); ++b) {
    s += (x.blocks()[b] * y.blocks()[b]).trace().real();
  }
  return s;
}

GammaVector dualiser(const GammaVector& x) {
  const double gamma = x.gamma();
  require_gamma_open(gamma, "dualiser");
  SpectralDecomposition sd = spectral(x.as_element());
  const double floor = tol::psd();
  std::vector<Matrix> blocks;
  blocks.reserve(sd.eigenvalues.size());
  for (std::size_t b = 0; b < sd.eigenvalues.size(); ++b) {
    RealVector v = sd.eigenvalues[b];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v[i] < -floor) {
        std::ostringstream msg;
        msg << "dualiser: eigenvalue " << v[i] << " is negative";
        throw NotPositiveError(msg.str());
      }
      v[i] = v[i] > 0.0 ? std::pow(gamma * v[i], (1.0 - gamma) / gamma) / (1.0 - gamma) : 0.0;
    }
    const Matrix& u = sd.eigenvectors[b];
    Matrix m = u * v.asDiagonal() * u.adjoint();
    blocks.push_back(0.5 * (m + m.adjoint()));
  }
  return gamma_vector_unchecked(1.0 - gamma, x.shape(), std::move(blocks));
}

GammaVector psi_gamma_gradient(const GammaVector& x) {
  const double gamma = x.gamma();
  require_gamma_open(gamma, "psi_gamma_gradient");
  SpectralDecomposition sd = spectral(x.as_element());
  std::vector<Matrix> blocks;
  blocks.reserve(sd.eigenvalues.size());
  for (std::size_t b = 0; b < sd.eigenvalues.size(); ++b) {
    RealVector v = sd.eigenvalues[b];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double mag = std::pow(std::abs(gamma * v[i]), (1.0 - gamma) / gamma) / (1.0 - gamma);
      v[i] = v[i] >= 0.0 ? mag : -mag;
    }
    const Matrix& u = sd.eigenvectors[b];
    Matrix m = u * v.asDiagonal() * u.adjoint();
    blocks.push_back(0.5 * (m + m.adjoint()));
  }
  return gamma_vector_unchecked(1.0 - gamma, x.shape(), std::move(blocks));
}

}  // namespace qgamma
