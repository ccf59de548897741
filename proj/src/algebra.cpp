#include "qgamma/algebra.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace qgamma {

namespace {

void require_same_shape(const AlgebraShape& a, const AlgebraShape& b, const char* where) {
  if (a != b) {
    std::ostringstream msg;
    msg << where << ": shape mismatch";
    throw ShapeMismatchError(msg.str());
  }
}

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

void check_block_sizes(const AlgebraShape& shape, const std::vector<Matrix>& blocks,
                       const char* where) {
  if (static_cast<int>(blocks.size()) != shape.block_count()) {
    throw ShapeMismatchError(std::string(where) + ": wrong number of blocks");
  }
  for (int b = 0; b < shape.block_count(); ++b) {
    const Matrix& m = blocks[static_cast<std::size_t>(b)];
    if (m.rows() != shape.block_dim(b) || m.cols() != shape.block_dim(b)) {
      throw ShapeMismatchError(std::string(where) + ": block dimension mismatch");
    }
  }
}

void check_hermitian(const std::vector<Matrix>& blocks, const char* where) {
  for (const Matrix& m : blocks) {
    const double norm = m.norm();
    const double dev = (m - m.adjoint()).norm();
    if (dev > tol::herm() * norm) {
      std::ostringstream msg;
      msg << where << ": block deviates from self-adjointness by " << dev;
      throw NonHermitianError(msg.str());
    }
  }
}

}  // namespace

AlgebraShape::AlgebraShape(std::vector<int> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ShapeMismatchError("AlgebraShape: no blocks");
  offsets_.reserve(blocks_.size());
  for (int d : blocks_) {
    if (d < 1) throw ShapeMismatchError("AlgebraShape: block dimension must be >= 1");
    offsets_.push_back(total_);
    total_ += d;
    coord_ += d * d;
  }
}

AlgebraShape AlgebraShape::classical(int n) {
  if (n < 1) throw ShapeMismatchError("AlgebraShape::classical: need n >= 1");
  return AlgebraShape(std::vector<int>(static_cast<std::size_t>(n), 1));
}

bool AlgebraShape::commutative() const {
  for (int d : blocks_) {
    if (d != 1) return false;
  }
  return true;
}

HermitianElement::HermitianElement(AlgebraShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  check_block_sizes(shape_, blocks_, "HermitianElement");
  check_hermitian(blocks_, "HermitianElement");
  for (Matrix& m : blocks_) m = symmetrize(m);
}

HermitianElement::HermitianElement(unchecked_t, AlgebraShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {}

HermitianElement hermitian_unchecked(AlgebraShape shape, std::vector<Matrix> blocks) {
  return HermitianElement(HermitianElement::unchecked_t{}, std::move(shape), std::move(blocks));
}

HermitianElement HermitianElement::zero(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.block_count()));
  for (int d : shape.blocks()) blocks.push_back(Matrix::Zero(d, d));
  return hermitian_unchecked(shape, std::move(blocks));
}

HermitianElement HermitianElement::identity(const AlgebraShape& shape) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.block_count()));
  for (int d : shape.blocks()) blocks.push_back(Matrix::Identity(d, d));
  return hermitian_unchecked(shape, std::move(blocks));
}

double HermitianElement::trace() const {
  double t = 0.0;
  for (const Matrix& m : blocks_) t += m.trace().real();
  return t;
}

double HermitianElement::frobenius_norm() const {
  double s = 0.0;
  for (const Matrix& m : blocks_) s += m.squaredNorm();
  return std::sqrt(s);
}

HermitianElement HermitianElement::operator+(const HermitianElement& o) const {
  require_same_shape(shape_, o.shape_, "HermitianElement::operator+");
  std::vector<Matrix> blocks = blocks_;
  for (std::size_t b = 0; b < blocks.size(); ++b) blocks[b] += o.blocks_[b];
  return hermitian_unchecked(shape_, std::move(blocks));
}

HermitianElement HermitianElement::operator-(const HermitianElement& o) const {
  require_same_shape(shape_, o.shape_, "HermitianElement::operator-");
  std::vector<Matrix> blocks = blocks_;
  for (std::size_t b = 0; b < blocks.size(); ++b) blocks[b] -= o.blocks_[b];
  return hermitian_unchecked(shape_, std::move(blocks));
}

HermitianElement HermitianElement::scaled(double factor) const {
  std::vector<Matrix> blocks = blocks_;
  for (Matrix& m : blocks) m *= factor;
  return hermitian_unchecked(shape_, std::move(blocks));
}

HermitianElement SpectralDecomposition::reconstruct() const {
  std::vector<Matrix> blocks;
  blocks.reserve(eigenvalues.size());
  for (std::size_t b = 0; b < eigenvalues.size(); ++b) {
    const Matrix& v = eigenvectors[b];
    blocks.push_back(symmetrize(v * eigenvalues[b].asDiagonal() * v.adjoint()));
  }
  return hermitian_unchecked(shape, std::move(blocks));
}

HermitianElement SpectralDecomposition::map_eigenvalues(
    const std::function<double(double)>& f) const {
  std::vector<Matrix> blocks;
  blocks.reserve(eigenvalues.size());
  for (std::size_t b = 0; b < eigenvalues.size(); ++b) {
    RealVector mapped = eigenvalues[b];
    for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped[i] = f(mapped[i]);
    const Matrix& v = eigenvectors[b];
    blocks.push_back(symmetrize(v * mapped.asDiagonal() * v.adjoint()));
  }
  return hermitian_unchecked(shape, std::move(blocks));
}

SpectralDecomposition spectral(const HermitianElement& a) {
  SpectralDecomposition out{a.shape(), {}, {}};
  out.eigenvalues.reserve(a.blocks().size());
  out.eigenvectors.reserve(a.blocks().size());
  for (const Matrix& m : a.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw Error("spectral: eigensolver failed");
    out.eigenvalues.push_back(es.eigenvalues());
    out.eigenvectors.push_back(es.eigenvectors());
  }
  return out;
}

State::State(AlgebraShape shape, std::vector<Matrix> blocks) {
  check_block_sizes(shape, blocks, "State");
  check_hermitian(blocks, "State");
  for (Matrix& m : blocks) m = symmetrize(m);

  shape_ = std::move(shape);
  blocks_ = std::move(blocks);
  const double floor = tol::psd();
  for (const Matrix& m : blocks_) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw Error("State: eigensolver failed");
    RealVector vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      if (vals[i] < -floor) {
        std::ostringstream msg;
        msg << "State: eigenvalue " << vals[i] << " below -" << floor;
        throw NotPositiveError(msg.str());
      }
      if (vals[i] < 0.0) vals[i] = 0.0;
      trace_ += vals[i];
    }
    eigenvalues_.push_back(std::move(vals));
    eigenvectors_.push_back(es.eigenvectors());
  }
}

State State::zero(const AlgebraShape& shape) {
  std::vector<RealVector> vals;
  std::vector<Matrix> vecs;
  for (int d : shape.blocks()) {
    vals.push_back(RealVector::Zero(d));
    vecs.push_back(Matrix::Identity(d, d));
  }
  return from_spectral(shape, std::move(vals), std::move(vecs));
}

State State::from_spectral(AlgebraShape shape, std::vector<RealVector> eigenvalues,
                           std::vector<Matrix> eigenvectors) {
  State s;
  s.shape_ = std::move(shape);
  s.eigenvalues_ = std::move(eigenvalues);
  s.eigenvectors_ = std::move(eigenvectors);
  if (s.eigenvalues_.size() != static_cast<std::size_t>(s.shape_.block_count()) ||
      s.eigenvectors_.size() != s.eigenvalues_.size()) {
    throw ShapeMismatchError("State::from_spectral: wrong number of blocks");
  }
  s.blocks_.reserve(s.eigenvalues_.size());
  for (std::size_t b = 0; b < s.eigenvalues_.size(); ++b) {
    RealVector& vals = s.eigenvalues_[b];
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      if (vals[i] < 0.0) vals[i] = 0.0;
      s.trace_ += vals[i];
    }
    const Matrix& v = s.eigenvectors_[b];
    s.blocks_.push_back(symmetrize(v * vals.asDiagonal() * v.adjoint()));
  }
  return s;
}

HermitianElement State::as_element() const { return hermitian_unchecked(shape_, blocks_); }

State matrix_power(const State& rho, double p) {
  if (!(p > 0.0)) throw Error("matrix_power: exponent must be positive");
  std::vector<RealVector> vals = rho.eigenvalues();
  for (RealVector& v : vals) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v[i] = v[i] > 0.0 ? std::pow(v[i], p) : 0.0;
    }
  }
  return State::from_spectral(rho.shape(), std::move(vals), rho.eigenvectors());
}

HermitianElement matrix_log_support(const State& rho) {
  const double floor = tol::psd();
  std::vector<Matrix> blocks;
  blocks.reserve(rho.blocks().size());
  for (std::size_t b = 0; b < rho.blocks().size(); ++b) {
    RealVector v = rho.eigenvalues()[b];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v[i] = v[i] > floor ? std::log(v[i]) : 0.0;
    }
    const Matrix& u = rho.eigenvectors()[b];
    blocks.push_back(symmetrize(u * v.asDiagonal() * u.adjoint()));
  }
  return hermitian_unchecked(rho.shape(), std::move(blocks));
}

HermitianElement support_projection(const State& rho) {
  const double floor = tol::psd();
  std::vector<Matrix> blocks;
  blocks.reserve(rho.blocks().size());
  for (std::size_t b = 0; b < rho.blocks().size(); ++b) {
    const RealVector& v = rho.eigenvalues()[b];
    RealVector indicator(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) indicator[i] = v[i] > floor ? 1.0 : 0.0;
    const Matrix& u = rho.eigenvectors()[b];
    blocks.push_back(symmetrize(u * indicator.asDiagonal() * u.adjoint()));
  }
  return hermitian_unchecked(rho.shape(), std::move(blocks));
}

double trace_pairing(const HermitianElement& x, const State& rho) {
  require_same_shape(x.shape(), rho.shape(), "trace_pairing");
  double s = 0.0;
  for (std::size_t b = 0; b < x.blocks().size(); ++b) {
    s += (x.blocks()[b] * rho.blocks()[b]).trace().real();
  }
  return s;
}

double trace_pairing(const HermitianElement& x, const HermitianElement& y) {
  require_same_shape(x.shape(), y.shape(), "trace_pairing");
  double s = 0.0;
  for (std::size_t b = 0; b < x.blocks().size(); ++b) {
    s += (x.blocks()[b] * y.blocks()[b]).trace().real();
  }
  return s;
}

namespace {

Matrix ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

State random_state(const AlgebraShape& shape, std::uint64_t seed, bool normalized) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.block_count()));
  double total = 0.0;
  for (int d : shape.blocks()) {
    Matrix g = ginibre(d, d, rng);
    Matrix m = g * g.adjoint();
    total += m.trace().real();
    blocks.push_back(std::move(m));
  }
  if (normalized && total > 0.0) {
    for (Matrix& m : blocks) m /= total;
  }
  return State(shape, std::move(blocks));
}

HermitianElement random_hermitian(const AlgebraShape& shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.block_count()));
  for (int d : shape.blocks()) {
    Matrix g = ginibre(d, d, rng);
    blocks.push_back(0.5 * (g + g.adjoint()));
  }
  return hermitian_unchecked(shape, std::move(blocks));
}

State mix(double wa, const State& a, double wb, const State& b) {
  require_same_shape(a.shape(), b.shape(), "mix");
  if (wa < 0.0 || wb < 0.0) throw NotPositiveError("mix: weights must be nonnegative");
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size());
  for (std::size_t i = 0; i < a.blocks().size(); ++i) {
    blocks.push_back(wa * a.blocks()[i] + wb * b.blocks()[i]);
  }
  return State(a.shape(), std::move(blocks));
}

State scale_state(const State& a, double factor) {
  if (factor < 0.0) throw NotPositiveError("scale_state: factor must be nonnegative");
  std::vector<RealVector> vals = a.eigenvalues();
  for (RealVector& v : vals) v *= factor;
  return State::from_spectral(a.shape(), std::move(vals), a.eigenvectors());
}

State diagonal_state(const std::vector<double>& weights) {
  if (weights.empty()) throw LengthMismatchError("diagonal_state: empty weight vector");
  std::vector<Matrix> blocks;
  blocks.reserve(weights.size());
  for (double w : weights) {
    Matrix m(1, 1);
    m(0, 0) = Complex(w, 0.0);
    blocks.push_back(std::move(m));
  }
  return State(AlgebraShape::classical(static_cast<int>(weights.size())), std::move(blocks));
}

std::vector<double> diagonal_weights(const State& s) {
  if (!s.shape().commutative()) {
    throw ShapeMismatchError("diagonal_weights: state is not on a classical shape");
  }
  std::vector<double> out;
  out.reserve(s.blocks().size());
  for (const Matrix& m : s.blocks()) out.push_back(m(0, 0).real());
  return out;
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RealVector real_vectorize(const AlgebraShape& shape, const std::vector<Matrix>& blocks) {
  RealVector v(shape.coordinate_dim());
  Eigen::Index k = 0;
  const double root2 = std::sqrt(2.0);
  for (int b = 0; b < shape.block_count(); ++b) {
    const Matrix& m = blocks[static_cast<std::size_t>(b)];
    const int d = shape.block_dim(b);
    for (int i = 0; i < d; ++i) v[k++] = m(i, i).real();
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        v[k++] = root2 * m(i, j).real();
        v[k++] = root2 * m(i, j).imag();
      }
    }
  }
  return v;
}

std::vector<Matrix> real_unvectorize(const AlgebraShape& shape, const RealVector& v) {
  if (v.size() != shape.coordinate_dim()) {
    throw ShapeMismatchError("real_unvectorize: vector length mismatch");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.block_count()));
  Eigen::Index k = 0;
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  for (int b = 0; b < shape.block_count(); ++b) {
    const int d = shape.block_dim(b);
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = Complex(v[k++], 0.0);
    for (int i = 0; i < d; ++i) {
      for (int j = i + 1; j < d; ++j) {
        const double re = inv_root2 * v[k++];
        const double im = inv_root2 * v[k++];
        m(i, j) = Complex(re, im);
        m(j, i) = Complex(re, -im);
      }
    }
    blocks.push_back(std::move(m));
  }
  return blocks;
}

Matrix embed_full(const AlgebraShape& shape, const std::vector<Matrix>& blocks) {
  Matrix full = Matrix::Zero(shape.total_dim(), shape.total_dim());
  for (int b = 0; b < shape.block_count(); ++b) {
    const int d = shape.block_dim(b);
    full.block(shape.block_offset(b), shape.block_offset(b), d, d) =
        blocks[static_cast<std::size_t>(b)];
  }
  return full;
}

std::vector<Matrix> extract_blocks(const AlgebraShape& shape, const Matrix& full) {
  if (full.rows() != shape.total_dim() || full.cols() != shape.total_dim()) {
    throw ShapeMismatchError("extract_blocks: matrix does not match shape");
  }
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(shape.block_count()));
  for (int b = 0; b < shape.block_count(); ++b) {
    const int d = shape.block_dim(b);
    blocks.push_back(full.block(shape.block_offset(b), shape.block_offset(b), d, d));
  }
  return blocks;
}

}  // namespace qgamma
