#include "qgamma/channels.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

namespace qgamma {

namespace {

constexpr double kChannelTol = 1e-10;

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

Channel::Channel(AlgebraShape in_shape, AlgebraShape out_shape, std::vector<Matrix> kraus)
    : in_shape_(std::move(in_shape)), out_shape_(std::move(out_shape)), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error("Channel: needs at least one Kraus operator");
  const int din = in_shape_.total_dim();
  const int dout = out_shape_.total_dim();
  Matrix sum = Matrix::Zero(din, din);
  for (const Matrix& k : kraus_) {
    if (k.rows() != dout || k.cols() != din) {
      std::ostringstream msg;
      msg << "Channel: Kraus operator is " << k.rows() << "x" << k.cols() << ", expected " << dout
          << "x" << din;
      throw ShapeMismatchError(msg.str());
    }
    sum += k.adjoint() * k;
  }
  const double dev = (sum - Matrix::Identity(din, din)).cwiseAbs().maxCoeff();
  // T unital and T* trace-preserving are the same Kraus condition.
  unital_ = dev <= kChannelTol;
  trace_preserving_ = unital_;
}

HermitianElement apply_markov(const Channel& t, const HermitianElement& x) {
  if (x.shape() != t.out_shape()) {
    throw ShapeMismatchError("apply_markov: element does not live on the out-shape");
  }
  const Matrix full = embed_full(x.shape(), x.blocks());
  Matrix acc = Matrix::Zero(t.in_shape().total_dim(), t.in_shape().total_dim());
  for (const Matrix& k : t.kraus()) acc += k.adjoint() * full * k;
  acc = 0.5 * (acc + acc.adjoint());
  return hermitian_unchecked(t.in_shape(), extract_blocks(t.in_shape(), acc));
}

State apply_coarse_graining(const Channel& t, const State& rho) {
  if (rho.shape() != t.in_shape()) {
    throw ShapeMismatchError("apply_coarse_graining: state does not live on the in-shape");
  }
  const Matrix full = embed_full(rho.shape(), rho.blocks());
  Matrix acc = Matrix::Zero(t.out_shape().total_dim(), t.out_shape().total_dim());
  for (const Matrix& k : t.kraus()) acc += k * full * k.adjoint();
  acc = 0.5 * (acc + acc.adjoint());
  return State(t.out_shape(), extract_blocks(t.out_shape(), acc));
}

double duality_residual(const Channel& t, const HermitianElement& x, const State& rho) {
  const double heisenberg = trace_pairing(apply_markov(t, x), rho);
  const double schroedinger = trace_pairing(x, apply_coarse_graining(t, rho));
  return std::abs(heisenberg - schroedinger);
}

AuditReport monotonicity_audit(const State& omega, const State& phi, double gamma,
                               const ChannelSamplerConfig& sampler, int trials) {
  if (trials < 1) throw Error("monotonicity_audit: trials must be >= 1");
  if (omega.shape() != phi.shape()) throw ShapeMismatchError("monotonicity_audit: shape mismatch");
  const AlgebraShape out = sampler.out_shape.value_or(omega.shape());
  const double before = gamma_divergence(omega, phi, gamma).value;

  AuditReport report;
  report.trials = trials;
  report.min_gap = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t seed = mix_seed(sampler.seed, static_cast<std::uint64_t>(trial));
    const Channel t = random_channel(omega.shape(), out, sampler.kraus_count, seed);
    const double after = gamma_divergence(apply_coarse_graining(t, omega),
                                          apply_coarse_graining(t, phi), gamma)
                             .value;
    const double gap = before - after;
    if (gap < report.min_gap) {
      report.min_gap = gap;
      report.worst_trial = trial;
      report.worst_seed = seed;
    }
  }
  report.pass = report.min_gap >= -kDivergenceSlack;
  return report;
}

Channel random_channel(const AlgebraShape& in_shape, const AlgebraShape& out_shape,
                       int kraus_count, std::uint64_t seed) {
  if (kraus_count < 1) throw Error("random_channel: kraus_count must be >= 1");
  const int din = in_shape.total_dim();
  const int dout = out_shape.total_dim();
  if (dout * kraus_count < din) {
    throw Error("random_channel: out_dim * kraus_count must be >= in_dim for an isometry");
  }
  std::mt19937_64 rng(seed);
  Matrix g = ginibre(dout * kraus_count, din, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dout * kraus_count, din);
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(kraus_count));
  for (int i = 0; i < kraus_count; ++i) {
    kraus.push_back(q.block(i * dout, 0, dout, din));
  }
  return Channel(in_shape, out_shape, std::move(kraus));
}

Channel random_channel(int in_dim, int out_dim, int kraus_count, std::uint64_t seed) {
  return random_channel(AlgebraShape({in_dim}), AlgebraShape({out_dim}), kraus_count, seed);
}

Channel pinching_channel(const AlgebraShape& shape) {
  const int d = shape.total_dim();
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    Matrix k = Matrix::Zero(d, d);
    k(i, i) = Complex(1.0, 0.0);
    kraus.push_back(std::move(k));
  }
  return Channel(shape, shape, std::move(kraus));
}

Matrix choi_matrix(const Channel& t) {
  const int din = t.in_shape().total_dim();
  const int dout = t.out_shape().total_dim();
  Matrix choi = Matrix::Zero(din * dout, din * dout);
  for (const Matrix& k : t.kraus()) {
    // Column-stacked vectorization of each Kraus operator.
    Eigen::VectorXcd v(din * dout);
    for (int j = 0; j < din; ++j) v.segment(j * dout, dout) = k.col(j);
    choi += v * v.adjoint();
  }
  return choi;
}

}  // namespace qgamma
