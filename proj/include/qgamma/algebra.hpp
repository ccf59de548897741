#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qgamma/errors.hpp"

namespace qgamma {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Ordered block dimensions of a finite-dimensional *-algebra, a direct sum
/// of full matrix blocks. All blocks of size one is the commutative case.
class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<int> blocks);

  /// n one-dimensional blocks (classical weight vectors of length n).
  static AlgebraShape classical(int n);

  const std::vector<int>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int block_dim(int b) const { return blocks_[static_cast<std::size_t>(b)]; }
  /// Offset of block b inside the direct-sum (total_dim) space.
  int block_offset(int b) const { return offsets_[static_cast<std::size_t>(b)]; }
  int total_dim() const { return total_; }
  /// Real dimension of the Hermitian part, sum of squared block sizes.
  int coordinate_dim() const { return coord_; }
  bool commutative() const;

  bool operator==(const AlgebraShape& o) const { return blocks_ == o.blocks_; }
  bool operator!=(const AlgebraShape& o) const { return !(*this == o); }

 private:
  std::vector<int> blocks_;
  std::vector<int> offsets_;
  int total_ = 0;
  int coord_ = 0;
};

/// Self-adjoint element of a block-diagonal algebra. The constructor checks
/// hermiticity within tol::herm() (relative) and symmetrizes the stored
/// blocks, so downstream spectral calls see exactly Hermitian input.
class HermitianElement {
 public:
  HermitianElement(AlgebraShape shape, std::vector<Matrix> blocks);

  static HermitianElement zero(const AlgebraShape& shape);
  static HermitianElement identity(const AlgebraShape& shape);

  const AlgebraShape& shape() const { return shape_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int b) const { return blocks_[static_cast<std::size_t>(b)]; }

  double trace() const;
  double frobenius_norm() const;

  HermitianElement operator+(const HermitianElement& o) const;
  HermitianElement operator-(const HermitianElement& o) const;
  HermitianElement scaled(double factor) const;

 private:
  struct unchecked_t {};
  HermitianElement(unchecked_t, AlgebraShape shape, std::vector<Matrix> blocks);

  AlgebraShape shape_;
  std::vector<Matrix> blocks_;

  friend HermitianElement hermitian_unchecked(AlgebraShape, std::vector<Matrix>);
};

/// Internal: wrap blocks already known to be exactly Hermitian.
HermitianElement hermitian_unchecked(AlgebraShape shape, std::vector<Matrix> blocks);

/// Eigenpairs of a Hermitian element, ascending per block.
struct SpectralDecomposition {
  AlgebraShape shape;
  std::vector<RealVector> eigenvalues;
  std::vector<Matrix> eigenvectors;  // orthonormal columns

  HermitianElement reconstruct() const;
  /// Element with the same eigenvectors and eigenvalues mapped by f.
  HermitianElement map_eigenvalues(const std::function<double(double)>& f) const;
};

/// Block-diagonal PSD density of a positive finite functional. Construction
/// checks hermiticity and positivity: eigenvalues below -tol::psd() fail,
/// eigenvalues in [-tol::psd(), 0) are clipped to zero. The spectral
/// decomposition (post-clip) is cached; trace is the sum of clipped
/// eigenvalues.
class State {
 public:
  State(AlgebraShape shape, std::vector<Matrix> blocks);

  static State zero(const AlgebraShape& shape);
  /// Build directly from eigendata; negative eigenvalues are clipped.
  static State from_spectral(AlgebraShape shape, std::vector<RealVector> eigenvalues,
                             std::vector<Matrix> eigenvectors);

  const AlgebraShape& shape() const { return shape_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int b) const { return blocks_[static_cast<std::size_t>(b)]; }
  const std::vector<RealVector>& eigenvalues() const { return eigenvalues_; }
  const std::vector<Matrix>& eigenvectors() const { return eigenvectors_; }
  double trace() const { return trace_; }

  HermitianElement as_element() const;

 private:
  State() = default;

  AlgebraShape shape_{std::vector<int>{1}};
  std::vector<Matrix> blocks_;
  std::vector<RealVector> eigenvalues_;
  std::vector<Matrix> eigenvectors_;
  double trace_ = 0.0;
};

SpectralDecomposition spectral(const HermitianElement& a);

/// Eigenvalues mapped t -> t^p on the support; 0^p = 0 for every p > 0.
State matrix_power(const State& rho, double p);

/// log on the support of rho, zero on the kernel. Callers combine with
/// support_projection when the kernel matters.
HermitianElement matrix_log_support(const State& rho);

/// Orthogonal projection onto the span of eigenvectors with eigenvalue
/// above tol::psd().
HermitianElement support_projection(const State& rho);

double trace_pairing(const HermitianElement& x, const State& rho);
double trace_pairing(const HermitianElement& x, const HermitianElement& y);

/// Deterministic Ginibre construction G G* per block; full rank with
/// probability one. normalized scales the result to unit trace.
State random_state(const AlgebraShape& shape, std::uint64_t seed, bool normalized);

/// Deterministic GUE-style Hermitian element (test and audit plumbing).
HermitianElement random_hermitian(const AlgebraShape& shape, std::uint64_t seed);

/// Convex-cone combination wa * a + wb * b (wa, wb >= 0).
State mix(double wa, const State& a, double wb, const State& b);
State scale_state(const State& a, double factor);

/// Classical weight vectors live on the all-ones shape.
State diagonal_state(const std::vector<double>& weights);
std::vector<double> diagonal_weights(const State& s);

/// splitmix64-style mixing for per-trial derived seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

/// Real inner-product-preserving vectorization of the Hermitian part:
/// diagonal entries, then sqrt(2)-weighted real/imag off-diagonals per block.
RealVector real_vectorize(const AlgebraShape& shape, const std::vector<Matrix>& blocks);
std::vector<Matrix> real_unvectorize(const AlgebraShape& shape, const RealVector& v);

/// Direct-sum embedding of block-diagonal data and its pinched inverse.
Matrix embed_full(const AlgebraShape& shape, const std::vector<Matrix>& blocks);
std::vector<Matrix> extract_blocks(const AlgebraShape& shape, const Matrix& full);

}  // namespace qgamma
