#pragma once

#include <cstdint>

#include "qgamma/divergence.hpp"
#include "qgamma/embeddings.hpp"

namespace qgamma {

/// One affine constraint on gamma-coordinates: the real trace pairing of x
/// with `a` equals `c` for x the embedding of the sought state.
struct Constraint {
  HermitianElement a;
  double c = 0.0;
};

/// Affine constraints defining the convex set for Bregman projection, all
/// expressed at a fixed embedding index in (0,1).
class ConstraintSet {
 public:
  ConstraintSet(double gamma, std::vector<Constraint> constraints);

  double gamma() const { return gamma_; }
  const AlgebraShape& shape() const { return shape_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }

 private:
  double gamma_;
  AlgebraShape shape_;
  std::vector<Constraint> constraints_;
};

struct ProjectionOptions {
  /// Projected-gradient stopping threshold; defaults to the solver tolerance.
  double tol = qgamma::tol::solver();
  int max_iterations = 10000;
  /// Alternating affine/PSD rounds per projection onto the feasible set.
  int feasibility_rounds = 50;

  enum class Start { Warm, Zero, Perturbed };
  Start start = Start::Warm;
  std::uint64_t start_seed = 0;

  /// Record the objective value along the iterate path (for diagnostics).
  bool record_objective = false;
};

struct ProjectionResult {
  State projected;
  double divergence = 0.0;
  int iterations = 0;
  double kkt_residual = 0.0;
  double feasibility_residual = 0.0;
  bool converged = false;
  std::vector<double> objective_path;
};

/// Bregman projection of psi onto the constraint set: minimizes the
/// deviation to psi over the set, working in gamma-coordinates where the
/// objective is convex and the constraints affine. Projected gradient with
/// Armijo backtracking; feasibility by alternating affine least-squares and
/// PSD eigenvalue clipping. Throws InfeasibleError when the affine system is
/// inconsistent or the affine/PSD intersection is empty; on iteration
/// exhaustion returns the best iterate with converged = false.
ProjectionResult bregman_project(const State& psi, const ConstraintSet& set,
                                 const ProjectionOptions& opts = {});

/// Optimality residuals D(omega, psi) - D(projected, psi) - D'(projected,
/// omega) at sampled feasible states omega; all nonnegative up to solver
/// tolerance iff the projection is optimal.
std::vector<double> optimality_residuals(const ProjectionResult& result, const State& psi,
                                         const ConstraintSet& set, int samples,
                                         std::uint64_t seed);

/// D(r, xbar) + D(xbar, y) - D(r, y) at index gamma; vanishes when xbar is
/// the projection of y onto an affine set containing r.
double pythagorean_residual(const State& r, const State& xbar, const State& y, double gamma);

}  // namespace qgamma
