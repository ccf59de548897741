#include "qgamma/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

namespace qgamma {

namespace {

void require_gamma_open(double gamma, const char* where) {
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    std::ostringstream msg;
    msg << where << ": gamma must lie in (0,1), got " << gamma;
    throw GammaOutOfRangeError(msg.str());
  }
}

/// Affine part of the feasible set in vectorized coordinates.
class AffineSystem {
 public:
  AffineSystem(const AlgebraShape& shape, const std::vector<Constraint>& constraints)
      : shape_(shape) {
    const int m = static_cast<int>(constraints.size());
    const int n = shape.coordinate_dim();
    a_.resize(m, n);
    c_.resize(m);
    for (int k = 0; k < m; ++k) {
      const Constraint& ct = constraints[static_cast<std::size_t>(k)];
      a_.row(k) = real_vectorize(shape, ct.a.blocks()).transpose();
      c_[k] = ct.c;
    }
    if (m > 0) {
      cod_.compute(a_);
      // Inconsistent right-hand side means the affine set is empty.
      const RealVector probe = cod_.solve(c_);
      const double res = (a_ * probe - c_).cwiseAbs().maxCoeff();
      if (res > 1e-8 * std::max(1.0, c_.cwiseAbs().maxCoeff())) {
        std::ostringstream msg;
        msg << "constraint system is inconsistent (residual " << res << ")";
        throw InfeasibleError(msg.str());
      }
    }
  }

  bool empty() const { return a_.rows() == 0; }

  RealVector project(const RealVector& v) const {
    if (empty()) return v;
    return v - cod_.solve(a_ * v - c_);
  }

  double residual(const RealVector& v) const {
    if (empty()) return 0.0;
    return (a_ * v - c_).cwiseAbs().maxCoeff();
  }

  /// Orthonormal-ish basis of the homogeneous solution space.
  Eigen::MatrixXd kernel() const {
    if (empty()) return Eigen::MatrixXd::Identity(shape_.coordinate_dim(), shape_.coordinate_dim());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a_);
    return lu.kernel();
  }

 private:
  AlgebraShape shape_;
  Eigen::MatrixXd a_;
  RealVector c_;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod_;
};

std::vector<Matrix> psd_clip(const std::vector<Matrix>& blocks) {
  std::vector<Matrix> out;
  out.reserve(blocks.size());
  for (const Matrix& m : blocks) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    RealVector v = es.eigenvalues();
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::max(v[i], 0.0);
    Matrix r = es.eigenvectors() * v.asDiagonal() * es.eigenvectors().adjoint();
    out.push_back(0.5 * (r + r.adjoint()));
  }
  return out;
}

struct FeasibleProjector {
  const AlgebraShape& shape;
  const AffineSystem& affine;
  int rounds;
  double tol;

  /// Alternating affine/PSD projection; ends on the PSD side so the result
  /// is exactly PSD with a reported affine residual.
  std::pair<std::vector<Matrix>, double> operator()(std::vector<Matrix> blocks) const {
    double res = 0.0;
    for (int r = 0; r < rounds; ++r) {
      RealVector v = affine.project(real_vectorize(shape, blocks));
      blocks = psd_clip(real_unvectorize(shape, v));
      res = affine.residual(real_vectorize(shape, blocks));
      if (res <= tol) break;
    }
    return {std::move(blocks), res};
  }
};

}  // namespace

ConstraintSet::ConstraintSet(double gamma, std::vector<Constraint> constraints)
    : gamma_(gamma),
      shape_(constraints.empty() ? AlgebraShape({1})
                                 : constraints.front().a.shape()),
      constraints_(std::move(constraints)) {
  require_gamma_open(gamma_, "ConstraintSet");
  if (constraints_.empty()) {
    throw Error("ConstraintSet: needs at least one constraint");
  }
  for (const Constraint& c : constraints_) {
    if (c.a.shape() != shape_) throw ShapeMismatchError("ConstraintSet: mixed shapes");
  }
}

ProjectionResult bregman_project(const State& psi, const ConstraintSet& set,
                                 const ProjectionOptions& opts) {
  const double gamma = set.gamma();
  if (psi.shape() != set.shape()) throw ShapeMismatchError("bregman_project: shape mismatch");

  const AffineSystem affine(set.shape(), set.constraints());
  const double feas_tol = std::max(opts.tol, 1e-12);
  const FeasibleProjector project_feasible{set.shape(), affine, opts.feasibility_rounds, feas_tol};

  const GammaVector target = ell_gamma(psi, 1.0 - gamma);
  const auto objective = [&](const std::vector<Matrix>& blocks) {
    const GammaVector x = gamma_vector_unchecked(gamma, set.shape(), blocks);
    return psi_gamma(x) - pairing(x, target);
  };
  const auto gradient_blocks = [&](const std::vector<Matrix>& blocks) {
    const GammaVector x = gamma_vector_unchecked(gamma, set.shape(), blocks);
    return (psi_gamma_gradient(x).as_element() - target.as_element()).blocks();
  };

  // Starting point.
  std::vector<Matrix> start;
  switch (opts.start) {
    case ProjectionOptions::Start::Warm:
      start = ell_gamma(psi, gamma).blocks();
      break;
    case ProjectionOptions::Start::Zero:
      start = HermitianElement::zero(set.shape()).blocks();
      break;
    case ProjectionOptions::Start::Perturbed: {
      const HermitianElement noise = random_hermitian(set.shape(), opts.start_seed);
      const double scale = 0.5 * (1.0 + ell_gamma(psi, gamma).frobenius_norm());
      start = (ell_gamma(psi, gamma).as_element() + noise.scaled(scale / std::max(1.0, noise.frobenius_norm()))).blocks();
      break;
    }
  }

  // Feasibility phase: drive the start into the affine/PSD intersection.
  auto [x, feas_res] = project_feasible(std::move(start));
  if (feas_res > feas_tol) {
    // One long stall-detection pass before giving up.
    double best = feas_res;
    int stalled = 0;
    for (int round = 0; round < 100 && stalled < 100; ++round) {
      auto [xx, rr] = project_feasible(std::move(x));
      x = std::move(xx);
      if (rr <= feas_tol) {
        feas_res = rr;
        break;
      }
      stalled = rr > 0.999 * best ? stalled + 1 : 0;
      best = std::min(best, rr);
      feas_res = rr;
    }
    if (feas_res > feas_tol) {
      std::ostringstream msg;
      msg << "no PSD point satisfies the constraints (stalled at residual " << feas_res << ")";
      throw InfeasibleError(msg.str());
    }
  }

  ProjectionResult result{State::zero(set.shape()), 0.0, 0, 0.0, 0.0, false, {}};
  double fx = objective(x);
  if (opts.record_objective) result.objective_path.push_back(fx);
  double step = 1.0;
  double kkt = std::numeric_limits<double>::infinity();
  std::vector<Matrix> prev_x, prev_grad;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const std::vector<Matrix> grad = gradient_blocks(x);

    // Projected-gradient residual with a unit probe step.
    std::vector<Matrix> probe = x;
    for (std::size_t b = 0; b < probe.size(); ++b) probe[b] -= grad[b];
    auto [probe_proj, probe_res] = project_feasible(std::move(probe));
    (void)probe_res;
    double moved = 0.0;
    for (std::size_t b = 0; b < x.size(); ++b) moved += (probe_proj[b] - x[b]).squaredNorm();
    kkt = std::sqrt(moved);
    if (kkt <= opts.tol) break;

    // Barzilai-Borwein initial step, safeguarded by the Armijo backtracking.
    if (!prev_x.empty()) {
      double ss = 0.0;
      double sy = 0.0;
      for (std::size_t b = 0; b < x.size(); ++b) {
        const Matrix s = x[b] - prev_x[b];
        const Matrix y = grad[b] - prev_grad[b];
        ss += s.squaredNorm();
        sy += (s * y).trace().real();
      }
      if (sy > 1e-16 * ss) step = std::clamp(ss / sy, 1e-8, 1e8);
    }
    prev_x = x;
    prev_grad = grad;

    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      std::vector<Matrix> cand = x;
      for (std::size_t b = 0; b < cand.size(); ++b) cand[b] -= step * grad[b];
      auto [cand_proj, cand_res] = project_feasible(std::move(cand));
      (void)cand_res;
      double dir = 0.0;  // Re<grad, cand - x>, negative for a descent step
      for (std::size_t b = 0; b < x.size(); ++b) {
        dir += (grad[b] * (cand_proj[b] - x[b])).trace().real();
      }
      const double fc = objective(cand_proj);
      if (fc <= fx + 1e-4 * dir) {
        x = std::move(cand_proj);
        fx = fc;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (opts.record_objective) result.objective_path.push_back(fx);
    if (!accepted) break;  // no further progress at machine precision
  }

  const GammaVector xg = gamma_vector_unchecked(gamma, set.shape(), x);
  result.projected = ell_gamma_inverse(xg);
  result.divergence = gamma_divergence(result.projected, psi, gamma).value;
  result.iterations = it;
  result.kkt_residual = kkt;
  result.feasibility_residual = affine.residual(real_vectorize(set.shape(), x));
  result.converged = kkt <= opts.tol;
  return result;
}

std::vector<double> optimality_residuals(const ProjectionResult& result, const State& psi,
                                         const ConstraintSet& set, int samples,
                                         std::uint64_t seed) {
  const double gamma = set.gamma();
  if (samples < 1) throw Error("optimality_residuals: samples must be >= 1");

  const AffineSystem affine(set.shape(), set.constraints());
  const double feas_tol = std::max(tol::solver(), 1e-12);
  const FeasibleProjector project_feasible{set.shape(), affine, 200, feas_tol};
  const Eigen::MatrixXd kernel = affine.kernel();

  const GammaVector xbar = ell_gamma(result.projected, gamma);
  const RealVector base = real_vectorize(set.shape(), xbar.blocks());
  const double span = 0.25 * (1.0 + base.norm());
  const double d_proj = gamma_divergence(result.projected, psi, gamma).value;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> residuals;
  residuals.reserve(static_cast<std::size_t>(samples));
  int attempts = 0;
  const int max_attempts = samples * 20;
  while (static_cast<int>(residuals.size()) < samples && attempts < max_attempts) {
    ++attempts;
    RealVector v = base;
    if (kernel.cols() > 0) {
      RealVector g(kernel.cols());
      for (Eigen::Index i = 0; i < g.size(); ++i) g[i] = gauss(rng);
      RealVector dir = kernel * g;
      const double n = dir.norm();
      if (n > 0.0) v += dir * (span / n) * std::abs(gauss(rng));
    }
    auto [blocks, res] = project_feasible(real_unvectorize(set.shape(), v));
    if (res > feas_tol) continue;
    const GammaVector xs = gamma_vector_unchecked(gamma, set.shape(), blocks);
    const State omega = ell_gamma_inverse(xs);
    const double r = gamma_divergence(omega, psi, gamma).value - d_proj -
                     gamma_divergence(result.projected, omega, 1.0 - gamma).value;
    residuals.push_back(r);
  }
  if (residuals.empty()) {
    throw SamplingFailedError("optimality_residuals: no feasible samples found");
  }
  return residuals;
}

double pythagorean_residual(const State& r, const State& xbar, const State& y, double gamma) {
  require_gamma_open(gamma, "pythagorean_residual");
  if (r.shape() != xbar.shape() || r.shape() != y.shape()) {
    throw ShapeMismatchError("pythagorean_residual: shape mismatch");
  }
  return gamma_divergence(r, xbar, gamma).value + gamma_divergence(xbar, y, gamma).value -
         gamma_divergence(r, y, gamma).value;
}

}  // namespace qgamma
