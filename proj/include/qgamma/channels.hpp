#pragma once

#include <cstdint>
#include <optional>

#include "qgamma/algebra.hpp"
#include "qgamma/divergence.hpp"

namespace qgamma {

/// Completely positive map in Kraus form. Kraus operators act on the full
/// direct-sum spaces (out_total x in_total); block structure of the in/out
/// algebras is restored by pinching outputs onto the block diagonal, which
/// is exact for channels constructed by this library.
///
/// Orientation: the Heisenberg map T sends the out-algebra into the
/// in-algebra, T(x) = sum K* x K; the dual coarse-graining T* sends states
/// on the in-shape to states on the out-shape, T*(rho) = sum K rho K*.
class Channel {
 public:
  Channel(AlgebraShape in_shape, AlgebraShape out_shape, std::vector<Matrix> kraus);

  const AlgebraShape& in_shape() const { return in_shape_; }
  const AlgebraShape& out_shape() const { return out_shape_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  /// T(1) = 1, equivalently sum K* K = 1 on the in-space.
  bool unital() const { return unital_; }
  /// T* preserves the trace; same Kraus condition as unitality of T.
  bool trace_preserving() const { return trace_preserving_; }

 private:
  AlgebraShape in_shape_;
  AlgebraShape out_shape_;
  std::vector<Matrix> kraus_;
  bool unital_ = false;
  bool trace_preserving_ = false;
};

/// Heisenberg action on an element of the out-algebra.
HermitianElement apply_markov(const Channel& t, const HermitianElement& x);

/// Schroedinger action on a state of the in-algebra.
State apply_coarse_graining(const Channel& t, const State& rho);

/// |<T(x), rho> - <x, T*(rho)>|; zero up to roundoff by adjointness.
double duality_residual(const Channel& t, const HermitianElement& x, const State& rho);

struct ChannelSamplerConfig {
  int kraus_count = 2;
  std::uint64_t seed = 0;
  /// Output shape of sampled channels; defaults to the input shape.
  std::optional<AlgebraShape> out_shape;
};

struct AuditReport {
  int trials = 0;
  double min_gap = 0.0;
  int worst_trial = -1;
  std::uint64_t worst_seed = 0;
  bool pass = false;
};

/// Applies `trials` sampled coarse-grainings to the fixed pair and reports
/// the smallest divergence drop; passes iff it stays above -1e-9.
AuditReport monotonicity_audit(const State& omega, const State& phi, double gamma,
                               const ChannelSamplerConfig& sampler, int trials);

/// Stinespring-style sampling: orthonormalized Ginibre isometry sliced into
/// kraus_count blocks. Always trace-preserving and unital.
Channel random_channel(int in_dim, int out_dim, int kraus_count, std::uint64_t seed);
Channel random_channel(const AlgebraShape& in_shape, const AlgebraShape& out_shape,
                       int kraus_count, std::uint64_t seed);

/// Conditional expectation onto the diagonal, as a channel shape -> shape.
Channel pinching_channel(const AlgebraShape& shape);

/// Choi matrix of the Schroedinger action; PSD for any Kraus channel.
Matrix choi_matrix(const Channel& t);

}  // namespace qgamma
