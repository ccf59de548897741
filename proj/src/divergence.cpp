#include "qgamma/divergence.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qgamma/embeddings.hpp"

namespace qgamma {

namespace {

void require_gamma_open(double gamma, const char* where) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    std::ostringstream msg;
    msg << where << ": gamma must lie in (0,1), got " << gamma;
    throw GammaOutOfRangeError(msg.str());
  }
}

void require_same_shape(const State& a, const State& b, const char* where) {
  if (a.shape() != b.shape()) {
    throw ShapeMismatchError(std::string(where) + ": shape mismatch");
  }
}

/// Re tr(rho_omega^gamma rho_phi^(1-gamma)) via the PSD sandwich
/// B A B with A = omega^gamma, B = phi^((1-gamma)/2).
double cross_term(const State& omega, const State& phi, double gamma) {
  const State a = matrix_power(omega, gamma);
  const State b = matrix_power(phi, 0.5 * (1.0 - gamma));
  double s = 0.0;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    s += (b.blocks()[k] * a.blocks()[k] * b.blocks()[k]).trace().real();
  }
  return s;
}

/// Exact representation equality; identical inputs must give exactly zero.
bool same_blocks(const State& a, const State& b) {
  if (a.shape() != b.shape()) return false;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    if (!(a.blocks()[k].array() == b.blocks()[k].array()).all()) return false;
  }
  return true;
}

/// Mass of rho outside the support projection of sigma.
double support_leak(const State& sigma, const State& rho) {
  const HermitianElement p = support_projection(sigma);
  double inside = 0.0;
  for (std::size_t b = 0; b < rho.blocks().size(); ++b) {
    inside += (p.blocks()[b] * rho.blocks()[b] * p.blocks()[b]).trace().real();
  }
  return rho.trace() - inside;
}

double entropy_term(const State& rho) {
  // tr(rho log rho) with 0 log 0 = 0.
  double s = 0.0;
  for (const RealVector& v : rho.eigenvalues()) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v[i] > tol::psd()) s += v[i] * std::log(v[i]);
    }
  }
  return s;
}

}  // namespace

DivergenceValue DivergenceValue::finite(double v, double gamma) {
  if (v < 0.0 && v >= -kDivergenceSlack) v = 0.0;
  return DivergenceValue{v, gamma, false};
}

DivergenceValue DivergenceValue::infinity(double gamma) {
  return DivergenceValue{0.0, gamma, true};
}

double DivergenceValue::value_or_inf() const {
  return infinite ? std::numeric_limits<double>::infinity() : value;
}

DivergenceValue gamma_divergence(const State& omega, const State& phi, double gamma) {
  require_gamma_open(gamma, "gamma_divergence");
  require_same_shape(omega, phi, "gamma_divergence");
  if (same_blocks(omega, phi)) return DivergenceValue::finite(0.0, gamma);
  const double numerator =
      gamma * omega.trace() + (1.0 - gamma) * phi.trace() - cross_term(omega, phi, gamma);
  return DivergenceValue::finite(numerator / (gamma * (1.0 - gamma)), gamma);
}

DivergenceValue relative_entropy_0(const State& omega, const State& phi) {
  require_same_shape(omega, phi, "relative_entropy_0");
  if (same_blocks(omega, phi)) return DivergenceValue::finite(0.0, 0.0);
  const double leak = support_leak(omega, phi);
  if (leak > tol::spec() * std::max(1.0, phi.trace())) {
    return DivergenceValue::infinity(0.0);
  }
  const double cross = trace_pairing(matrix_log_support(omega), phi);
  const double v = omega.trace() - phi.trace() + entropy_term(phi) - cross;
  return DivergenceValue::finite(v, 0.0);
}

DivergenceValue relative_entropy_1(const State& omega, const State& phi) {
  DivergenceValue d = relative_entropy_0(phi, omega);
  d.gamma = 1.0;
  return d;
}

DivergenceValue classical_gamma_divergence(const std::vector<double>& p,
                                           const std::vector<double>& q, double gamma) {
  require_gamma_open(gamma, "classical_gamma_divergence");
  if (p.size() != q.size()) {
    throw LengthMismatchError("classical_gamma_divergence: length mismatch");
  }
  if (p == q) {
    for (double w : p) {
      if (w < 0.0) throw NotPositiveError("classical_gamma_divergence: negative weight");
    }
    return DivergenceValue::finite(0.0, gamma);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) {
      throw NotPositiveError("classical_gamma_divergence: negative weight");
    }
    s += gamma * p[i] + (1.0 - gamma) * q[i] - std::pow(p[i], gamma) * std::pow(q[i], 1.0 - gamma);
  }
  return DivergenceValue::finite(s / (gamma * (1.0 - gamma)), gamma);
}

double cosine_residual(const State& omega, const State& phi, const State& psi, double gamma) {
  require_gamma_open(gamma, "cosine_residual");
  require_same_shape(omega, phi, "cosine_residual");
  require_same_shape(omega, psi, "cosine_residual");
  const GammaVector lo = ell_gamma(omega, gamma);
  const GammaVector lf = ell_gamma(phi, gamma);
  const GammaVector dp = ell_gamma(psi, 1.0 - gamma) - ell_gamma(phi, 1.0 - gamma);
  const double lhs = gamma_divergence(omega, phi, gamma).value +
                     gamma_divergence(phi, psi, gamma).value -
                     gamma_divergence(omega, psi, gamma).value;
  return lhs - pairing(lo - lf, dp);
}

}  // namespace qgamma
