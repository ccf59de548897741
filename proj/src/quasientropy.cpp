#include "qgamma/quasientropy.hpp"

#include <cmath>
#include <sstream>

namespace qgamma {

namespace {

void require_gamma_open(double gamma, const char* where) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    std::ostringstream msg;
    msg << where << ": gamma must lie in (0,1), got " << gamma;
    throw GammaOutOfRangeError(msg.str());
  }
}

}  // namespace

RelativeModularData relative_modular_data(const State& omega, const State& phi) {
  if (omega.shape() != phi.shape()) {
    throw ShapeMismatchError("relative_modular_data: shape mismatch");
  }
  const AlgebraShape& shape = omega.shape();
  const int n = shape.total_dim();
  RelativeModularData data;
  data.alphas = RealVector::Zero(n);
  data.betas = RealVector::Zero(n);
  data.overlap = Eigen::MatrixXd::Zero(n, n);
  for (int b = 0; b < shape.block_count(); ++b) {
    const int d = shape.block_dim(b);
    const int off = shape.block_offset(b);
    data.alphas.segment(off, d) = omega.eigenvalues()[static_cast<std::size_t>(b)];
    data.betas.segment(off, d) = phi.eigenvalues()[static_cast<std::size_t>(b)];
    const Matrix& a = omega.eigenvectors()[static_cast<std::size_t>(b)];
    const Matrix& c = phi.eigenvectors()[static_cast<std::size_t>(b)];
    data.overlap.block(off, off, d, d) = (a.adjoint() * c).cwiseAbs2();
  }
  return data;
}

double f_gamma(double t, double gamma) {
  require_gamma_open(gamma, "f_gamma");
  if (t < 0.0) throw NotPositiveError("f_gamma: argument must be nonnegative");
  return 1.0 / gamma + t / (1.0 - gamma) - std::pow(t, gamma) / (gamma * (1.0 - gamma));
}

double quasi_entropy_gamma(const State& omega, const State& phi, double gamma) {
  require_gamma_open(gamma, "quasi_entropy_gamma");
  const RelativeModularData data = relative_modular_data(omega, phi);
  double s = 0.0;
  for (Eigen::Index i = 0; i < data.alphas.size(); ++i) {
    const double alpha = data.alphas[i];
    for (Eigen::Index j = 0; j < data.betas.size(); ++j) {
      const double w = data.overlap(i, j);
      if (w == 0.0) continue;
      const double beta = data.betas[j];
      double term;
      if (beta > 0.0) {
        // f_gamma(alpha/beta) * beta, expanded so the ratio is never formed.
        // alpha = 0 contributes beta/gamma through the 0^gamma convention.
        term = beta / gamma + alpha / (1.0 - gamma) -
               std::pow(alpha, gamma) * std::pow(beta, 1.0 - gamma) / (gamma * (1.0 - gamma));
      } else if (alpha > 0.0) {
        // beta -> 0 limit of f_gamma(alpha/beta) * beta.
        term = alpha / (1.0 - gamma);
      } else {
        term = 0.0;
      }
      s += term * w;
    }
  }
  return s;
}

}  // namespace qgamma
