#include <doctest.h>

#include <cmath>

#include "qgamma/channels.hpp"
#include "qgamma/embeddings.hpp"

using namespace qgamma;

namespace {

Matrix hadamard() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Channel identity_channel(const AlgebraShape& shape) {
  return Channel(shape, shape, {Matrix::Identity(shape.total_dim(), shape.total_dim())});
}

State qubit(double a, Complex off, double d) {
  Matrix m(2, 2);
  m << a, off, std::conj(off), d;
  return State(AlgebraShape({2}), {m});
}

}  // namespace

TEST_CASE("channel flags") {
  const AlgebraShape shape({2});
  const Channel id = identity_channel(shape);
  CHECK(id.unital());
  CHECK(id.trace_preserving());

  // a scaled isometry is neither unital nor trace preserving
  const Channel lossy(shape, shape, {0.9 * Matrix::Identity(2, 2)});
  CHECK(!lossy.unital());
  CHECK(!lossy.trace_preserving());

  CHECK_THROWS_AS(Channel(shape, shape, {Matrix::Identity(3, 3)}), ShapeMismatchError);
}

TEST_CASE("heisenberg action examples") {
  const AlgebraShape shape({2});
  const Channel id = identity_channel(shape);
  const HermitianElement x = random_hermitian(shape, 3);
  CHECK((apply_markov(id, x) - x).frobenius_norm() <= 1e-14);

  // pinching kills the off-diagonal part
  Matrix off(2, 2);
  off << 0, 1, 1, 0;
  const HermitianElement killed = apply_markov(pinching_channel(shape), HermitianElement(shape, {off}));
  CHECK(killed.frobenius_norm() <= 1e-14);

  // unitary conjugation by the Hadamard matrix
  const Channel had(shape, shape, {hadamard()});
  Matrix e00(2, 2);
  e00 << 1, 0, 0, 0;
  const HermitianElement rotated = apply_markov(had, HermitianElement(shape, {e00}));
  CHECK(rotated.block(0)(0, 0).real() == doctest::Approx(0.5));
  CHECK(rotated.block(0)(0, 1).real() == doctest::Approx(0.5));

  // unital maps fix the identity
  const Channel rc = random_channel(3, 3, 2, 5);
  const HermitianElement fixed = apply_markov(rc, HermitianElement::identity(AlgebraShape({3})));
  CHECK((fixed - HermitianElement::identity(AlgebraShape({3}))).frobenius_norm() <= 1e-10);

  CHECK_THROWS_AS(apply_markov(had, HermitianElement::identity(AlgebraShape({3}))),
                  ShapeMismatchError);
}

TEST_CASE("schroedinger action examples") {
  const AlgebraShape shape({2});
  const State rho = qubit(0.5, Complex(0.5, 0.0), 0.5);

  const State same = apply_coarse_graining(identity_channel(shape), rho);
  CHECK((same.as_element() - rho.as_element()).frobenius_norm() <= 1e-14);

  const State pinched = apply_coarse_graining(pinching_channel(shape), rho);
  CHECK(pinched.block(0)(0, 0).real() == doctest::Approx(0.5));
  CHECK(std::abs(pinched.block(0)(0, 1)) <= 1e-14);

  const Channel had(shape, shape, {hadamard()});
  const State rotated = apply_coarse_graining(had, qubit(1.0, Complex(0.0, 0.0), 0.0));
  CHECK(rotated.block(0)(0, 0).real() == doctest::Approx(0.5));
  CHECK(rotated.block(0)(0, 1).real() == doctest::Approx(0.5));

  // trace preserved by unital channels
  const State big = random_state(AlgebraShape({4}), 7, false);
  const State moved = apply_coarse_graining(random_channel(4, 4, 3, 11), big);
  CHECK(moved.trace() == doctest::Approx(big.trace()).epsilon(1e-10));
}

TEST_CASE("adjoint pairing identity") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const AlgebraShape shape({static_cast<int>(2 + seed % 3)});
    const Channel ch = random_channel(shape, shape, 1 + static_cast<int>(seed % 3), seed);
    const HermitianElement x = random_hermitian(shape, mix_seed(seed, 1));
    const State rho = random_state(shape, mix_seed(seed, 2), true);
    CHECK(duality_residual(ch, x, rho) <= 1e-10);
  }
  // unital channel applied to the identity reproduces the trace
  const AlgebraShape shape({3});
  const Channel ch = random_channel(3, 3, 2, 17);
  const State rho = random_state(shape, 19, false);
  CHECK(trace_pairing(apply_markov(ch, HermitianElement::identity(shape)), rho) ==
        doctest::Approx(rho.trace()).epsilon(1e-12));
  CHECK(duality_residual(ch, HermitianElement::zero(shape), rho) == 0.0);
}

TEST_CASE("cross-block channels keep the pairing identity") {
  const AlgebraShape in({2, 2});
  const AlgebraShape out({3});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Channel ch = random_channel(in, out, 2, seed);
    const HermitianElement x = random_hermitian(out, mix_seed(seed, 3));
    const State rho = random_state(in, mix_seed(seed, 4), true);
    CHECK(duality_residual(ch, x, rho) <= 1e-10);
    CHECK(apply_coarse_graining(ch, rho).trace() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("random channel construction") {
  // kraus_count 1 with equal dims is a unitary conjugation
  const Channel u = random_channel(3, 3, 1, 23);
  const Matrix& k = u.kraus()[0];
  CHECK((k.adjoint() * k - Matrix::Identity(3, 3)).norm() <= 1e-12);

  const Channel a = random_channel(2, 4, 3, 29);
  const Channel b = random_channel(2, 4, 3, 29);
  for (std::size_t i = 0; i < a.kraus().size(); ++i) {
    CHECK((a.kraus()[i] - b.kraus()[i]).norm() == 0.0);
  }

  Matrix sum = Matrix::Zero(2, 2);
  for (const Matrix& kk : a.kraus()) sum += kk.adjoint() * kk;
  CHECK((sum - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-10);

  CHECK_THROWS_AS(random_channel(4, 2, 1, 0), Error);  // no isometry fits
}

TEST_CASE("choi matrices of sampled channels are PSD") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Channel ch = random_channel(2 + static_cast<int>(seed % 2), 3, 2, seed);
    const Matrix choi = choi_matrix(ch);
    Eigen::SelfAdjointEigenSolver<Matrix> es(choi);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9);
  }
}

TEST_CASE("pinching is idempotent and fixes diagonal states") {
  const AlgebraShape shape({3});
  const Channel pinch = pinching_channel(shape);
  CHECK(pinch.unital());
  const State rho = random_state(shape, 31, true);
  const State once = apply_coarse_graining(pinch, rho);
  const State twice = apply_coarse_graining(pinch, once);
  CHECK((once.as_element() - twice.as_element()).frobenius_norm() <= 1e-13);

  Matrix d(3, 3);
  d.setZero();
  d.diagonal() << 0.2, 0.3, 0.5;
  const State diag(shape, {d});
  const State kept = apply_coarse_graining(pinch, diag);
  CHECK((kept.as_element() - diag.as_element()).frobenius_norm() <= 1e-14);
}

TEST_CASE("monotonicity audit") {
  const State omega = qubit(1.0, Complex(0.0, 0.0), 0.0);
  const State phi = qubit(0.5, Complex(0.5, 0.0), 0.5);

  // identity channel leaves the divergence unchanged
  const double before = gamma_divergence(omega, phi, 0.5).value;
  const State o2 = apply_coarse_graining(identity_channel(omega.shape()), omega);
  const State f2 = apply_coarse_graining(identity_channel(omega.shape()), phi);
  CHECK(gamma_divergence(o2, f2, 0.5).value == doctest::Approx(before).epsilon(1e-12));

  // pinching drops it to the classical value 4 (1 - sqrt(1/2))
  const State po = apply_coarse_graining(pinching_channel(omega.shape()), omega);
  const State pf = apply_coarse_graining(pinching_channel(omega.shape()), phi);
  const double after = gamma_divergence(po, pf, 0.5).value;
  CHECK(after == doctest::Approx(4.0 * (1.0 - std::sqrt(0.5))).epsilon(1e-12));
  CHECK(after == doctest::Approx(1.1715729).epsilon(1e-7));
  CHECK(before == doctest::Approx(2.0));

  // randomized audit passes
  ChannelSamplerConfig sampler;
  sampler.kraus_count = 2;
  sampler.seed = 37;
  const AuditReport report = monotonicity_audit(omega, phi, 0.5, sampler, 200);
  CHECK(report.pass);
  CHECK(report.min_gap >= -1e-9);
  CHECK(report.trials == 200);
}

TEST_CASE("unital iff dual trace preserving on random kraus sets") {
  // random non-isometric Kraus sets: flags agree with the measured behavior
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const AlgebraShape shape({2});
    const Channel good = random_channel(shape, shape, 2, seed);
    const State rho = random_state(shape, mix_seed(seed, 5), false);
    const double kept = apply_coarse_graining(good, rho).trace();
    CHECK(good.trace_preserving());
    CHECK(kept == doctest::Approx(rho.trace()).epsilon(1e-10));

    std::vector<Matrix> scaled = good.kraus();
    for (Matrix& m : scaled) m *= 0.8;
    const Channel bad(shape, shape, scaled);
    CHECK(!bad.unital());
    CHECK(!bad.trace_preserving());
    CHECK(apply_coarse_graining(bad, rho).trace() < rho.trace());
  }
}
