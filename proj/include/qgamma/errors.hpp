#pragma once

#include <stdexcept>
#include <string>

namespace qgamma {

/// Base class of all qgamma errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianError : Error { using Error::Error; };
struct NotPositiveError : Error { using Error::Error; };
struct ShapeMismatchError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };
struct GammaOutOfRangeError : Error { using Error::Error; };
struct GammaMismatchError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct SamplingFailedError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

namespace tol {

/// Hermiticity tolerance, relative to the Frobenius norm of the block.
double herm();

/// PSD eigenvalue floor (absolute). Eigenvalues in [-psd(), 0) are clipped
/// to zero; anything below fails construction. Env override: QGAMMA_PSD_TOL.
double psd();

/// Spectral reconstruction / projector tolerance.
double spec();

/// Default solver stopping tolerance. Env override: QGAMMA_SOLVER_TOL.
double solver();

/// Programmatic overrides; these take precedence over the environment.
void set_psd(double v);
void set_solver(double v);
void reset_overrides();

/// Throws Error if a tolerance environment variable is set but invalid.
void validate_environment();

}  // namespace tol

}  // namespace qgamma
