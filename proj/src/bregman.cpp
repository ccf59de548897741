#include "qgamma/bregman.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace qgamma {

namespace {

constexpr double kGammaMatchTol = 1e-12;

void require_same_index(const GammaVector& x, const GammaVector& y, const char* where) {
  if (std::abs(x.gamma() - y.gamma()) > kGammaMatchTol) {
    std::ostringstream msg;
    msg << where << ": vectors live at different indices " << x.gamma() << " vs " << y.gamma();
    throw GammaMismatchError(msg.str());
  }
  if (x.shape() != y.shape()) throw ShapeMismatchError(std::string(where) + ": shape mismatch");
}

}  // namespace

double generalized_bregman(const GammaVector& x, const GammaVector& y) {
  // pairing() enforces complementary indices and matching shapes.
  return psi_gamma(x) + psi_gamma(y) - pairing(x, y);
}

double standard_bregman(const GammaVector& x, const GammaVector& y) {
  require_same_index(x, y, "standard_bregman");
  const GammaVector grad = dualiser(y);
  return psi_gamma(x) - psi_gamma(y) - pairing(x - y, grad);
}

double young_fenchel_residual(const GammaVector& x, const GammaVector& y) {
  return generalized_bregman(x, y);
}

double representation_index_duality_residual(const GammaVector& x, const GammaVector& y) {
  require_same_index(x, y, "representation_index_duality_residual");
  const double lhs = standard_bregman(y, x);
  const double rhs = standard_bregman(dualiser(x), dualiser(y));
  return lhs - rhs;
}

FenchelEstimate fenchel_dual_estimate(const GammaVector& y, const FenchelOptions& opts) {
  const double gamma = 1.0 - y.gamma();
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw GammaOutOfRangeError("fenchel_dual_estimate: complementary index out of (0,1)");
  }

  // Ascent objective g(x) = pairing(x, y) - psi_gamma(x), concave in x.
  const auto objective = [&](const GammaVector& x) { return pairing(x, y) - psi_gamma(x); };
  const auto gradient = [&](const GammaVector& x) {
    // y - grad psi lives at 1-gamma; shift indices to do the arithmetic.
    const HermitianElement g = y.as_element() - psi_gamma_gradient(x).as_element();
    return GammaVector::from_element(gamma, g);
  };

  // The odd-extension gradient map gives the stationary point for any
  // Hermitian y (it is dualiser(y) when y is PSD).
  GammaVector x =
      opts.cold_start ? GammaVector::zero(gamma, y.shape()) : psi_gamma_gradient(y);
  double fx = objective(x);
  double best = fx;
  GammaVector grad = gradient(x);
  double res = grad.frobenius_norm();
  double step = 1.0;
  GammaVector prev_x = x;
  GammaVector prev_grad = grad;
  bool have_prev = false;
  // Non-monotone window for the Barzilai-Borwein steps.
  std::deque<double> window{fx};
  int it = 0;
  for (; it < opts.max_iterations && res > opts.tol; ++it) {
    // Barzilai-Borwein initial step, safeguarded by the windowed Armijo test.
    if (have_prev) {
      const HermitianElement s = x.as_element() - prev_x.as_element();
      const HermitianElement dg = prev_grad.as_element() - grad.as_element();
      const double ss = s.frobenius_norm() * s.frobenius_norm();
      const double sy = trace_pairing(s, dg);
      if (sy > 1e-16 * ss) step = std::clamp(ss / sy, 1e-8, 1e8);
    }
    prev_x = x;
    prev_grad = grad;
    have_prev = true;

    const double reference = *std::min_element(window.begin(), window.end());
    const double gnorm2 = res * res;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      const GammaVector cand =
          GammaVector::from_element(gamma, x.as_element() + grad.as_element().scaled(step));
      const double fc = objective(cand);
      if (fc >= reference + 1e-4 * step * gnorm2) {
        x = cand;
        fx = fc;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search exhausted at machine precision
    best = std::max(best, fx);
    window.push_back(fx);
    if (window.size() > 10) window.pop_front();
    grad = gradient(x);
    res = grad.frobenius_norm();
  }

  // Every iterate underestimates the supremum, so the best value seen is the
  // tightest valid estimate.
  FenchelEstimate est;
  est.value = best;
  est.iterations = it;
  est.gradient_residual = res;
  est.converged = res <= opts.tol;
  return est;
}

}  // namespace qgamma
