#include <doctest.h>

#include <cmath>

#include "qgamma/bregman.hpp"
#include "qgamma/divergence.hpp"

using namespace qgamma;

TEST_CASE("generalized bregman examples") {
  const AlgebraShape shape({2});
  const State omega = random_state(shape, 1, true);
  const State phi = random_state(shape, 2, false);

  // equality case of the Young-Fenchel inequality
  for (double g : {0.2, 0.5, 0.8}) {
    CHECK(std::abs(generalized_bregman(ell_gamma(omega, g), ell_gamma(omega, 1.0 - g))) <= 1e-10);
  }

  // classical oracle value
  const double oracle = 4.0 * (1.0 - std::sqrt(0.375) - std::sqrt(0.125));
  const State p = diagonal_state({0.5, 0.5});
  const State q = diagonal_state({0.75, 0.25});
  CHECK(generalized_bregman(ell_gamma(p, 0.5), ell_gamma(q, 0.5)) ==
        doctest::Approx(oracle).epsilon(1e-10));

  // vanishing first argument leaves the conjugate potential
  for (double g : {0.3, 0.6}) {
    const GammaVector zero = GammaVector::zero(g, shape);
    CHECK(generalized_bregman(zero, ell_gamma(phi, 1.0 - g)) ==
          doctest::Approx(phi.trace() / g).epsilon(1e-10));
  }

  CHECK_THROWS_AS(generalized_bregman(ell_gamma(omega, 0.4), ell_gamma(phi, 0.4)),
                  GammaMismatchError);
}

TEST_CASE("generalized bregman equals the divergence on embeddings") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const AlgebraShape shape({static_cast<int>(2 + seed % 3)});
    const State omega = random_state(shape, mix_seed(seed, 1), true);
    const State phi = random_state(shape, mix_seed(seed, 2), false);
    for (int k = 1; k <= 9; ++k) {
      const double g = 0.1 * k;
      const double lhs = generalized_bregman(ell_gamma(omega, g), ell_gamma(phi, 1.0 - g));
      CHECK(std::abs(lhs - gamma_divergence(omega, phi, g).value) <= 1e-10);
    }
  }
}

TEST_CASE("standard bregman") {
  const AlgebraShape shape({2});
  const State omega = random_state(shape, 3, true);

  // property iii: zero iff equal
  for (double g : {0.25, 0.5, 0.75}) {
    const GammaVector x = ell_gamma(omega, g);
    CHECK(std::abs(standard_bregman(x, x)) <= 1e-12);
  }

  // half-index case is the squared distance
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GammaVector x =
        GammaVector::from_element(0.5, random_hermitian(shape, mix_seed(seed, 3)));
    const GammaVector y = ell_gamma(random_state(shape, mix_seed(seed, 4), false), 0.5);
    const double quad = 0.5 * std::pow((x.as_element() - y.as_element()).frobenius_norm(), 2);
    CHECK(standard_bregman(x, y) == doctest::Approx(quad).epsilon(1e-10));
  }

  // the projector pair example evaluated in coordinates
  Matrix e00(2, 2), plus(2, 2);
  e00 << 1, 0, 0, 0;
  plus << 0.5, 0.5, 0.5, 0.5;
  const GammaVector x = ell_gamma(State(shape, {e00}), 0.5);
  const GammaVector y = ell_gamma(State(shape, {plus}), 0.5);
  CHECK(standard_bregman(x, y) == doctest::Approx(2.0).epsilon(1e-12));

  // agreement with the dual form
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double g = 0.3;
    const GammaVector a =
        GammaVector::from_element(g, random_hermitian(shape, mix_seed(seed, 5)));
    const GammaVector b = ell_gamma(random_state(shape, mix_seed(seed, 6), true), g);
    CHECK(std::abs(standard_bregman(a, b) - generalized_bregman(a, dualiser(b))) <= 1e-10);
  }

  // second argument must be in the dualiser domain
  const GammaVector neg(0.5, AlgebraShape({1}), {Matrix::Constant(1, 1, -1.0)});
  const GammaVector pos(0.5, AlgebraShape({1}), {Matrix::Constant(1, 1, 1.0)});
  CHECK_THROWS_AS(standard_bregman(pos, neg), NotPositiveError);
}

TEST_CASE("standard bregman satisfies the cosine identity") {
  const AlgebraShape shape({3});
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const double g = 0.1 * (1 + seed % 9);
    const GammaVector r1 = ell_gamma(random_state(shape, mix_seed(seed, 7), true), g);
    const GammaVector r2 = ell_gamma(random_state(shape, mix_seed(seed, 8), false), g);
    const GammaVector r3 = ell_gamma(random_state(shape, mix_seed(seed, 9), true), g);
    const double lhs =
        standard_bregman(r1, r2) + standard_bregman(r2, r3) - standard_bregman(r1, r3);
    const double rhs = pairing(r1 - r2, dualiser(r3) - dualiser(r2));
    CHECK(std::abs(lhs - rhs) <= 1e-9);
  }
}

TEST_CASE("young-fenchel residual") {
  const AlgebraShape shape({2});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double g = 0.1 * (1 + seed % 9);
    const State omega = random_state(shape, mix_seed(seed, 10), true);
    const State phi = random_state(shape, mix_seed(seed, 11), false);
    const GammaVector x = ell_gamma(omega, g);

    // equality exactly at the dualiser image
    CHECK(std::abs(young_fenchel_residual(x, dualiser(x))) <= 1e-9);

    // embedded pairs reproduce the divergence
    const double resid = young_fenchel_residual(x, ell_gamma(phi, 1.0 - g));
    CHECK(resid == doctest::Approx(gamma_divergence(omega, phi, g).value).epsilon(1e-10));
    CHECK(resid >= -1e-9);

    // mismatched PSD pairs sit strictly above zero
    if ((omega.as_element() - phi.as_element()).frobenius_norm() > 1e-6) {
      CHECK(resid > 0.0);
    }
  }
}

TEST_CASE("representation-index duality") {
  const AlgebraShape shape({2});
  const GammaVector x = ell_gamma(random_state(shape, 21, true), 0.5);
  const GammaVector y = ell_gamma(random_state(shape, 22, false), 0.5);
  CHECK(std::abs(representation_index_duality_residual(x, x)) <= 1e-12);
  CHECK(std::abs(representation_index_duality_residual(x, y)) <= 1e-12);

  // classical pair at gamma = 0.3: both sides equal the classical value
  const State p = diagonal_state({0.5, 0.5});
  const State q = diagonal_state({0.75, 0.25});
  const GammaVector xp = ell_gamma(p, 0.3);
  const GammaVector yq = ell_gamma(q, 0.3);
  CHECK(std::abs(representation_index_duality_residual(xp, yq)) <= 1e-9);
  const double lhs = standard_bregman(yq, xp);
  const double oracle = classical_gamma_divergence({0.75, 0.25}, {0.5, 0.5}, 0.3).value;
  CHECK(lhs == doctest::Approx(oracle).epsilon(1e-10));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double g = 0.1 * (1 + seed % 9);
    const GammaVector a = ell_gamma(random_state(shape, mix_seed(seed, 12), true), g);
    const GammaVector b = ell_gamma(random_state(shape, mix_seed(seed, 13), false), g);
    CHECK(std::abs(representation_index_duality_residual(a, b)) <= 1e-9);
  }
}

TEST_CASE("psi is convex") {
  const AlgebraShape shape({3});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double g = 0.1 * (1 + seed % 9);
    const GammaVector x1 =
        GammaVector::from_element(g, random_hermitian(shape, mix_seed(seed, 14)));
    const GammaVector x2 =
        GammaVector::from_element(g, random_hermitian(shape, mix_seed(seed, 15)));
    const double lambda = static_cast<double>(mix_seed(seed, 16) % 1001) / 1000.0;
    const GammaVector blend = x1.scaled(lambda) + x2.scaled(1.0 - lambda);
    CHECK(psi_gamma(blend) <= lambda * psi_gamma(x1) + (1.0 - lambda) * psi_gamma(x2) + 1e-9);
  }
}

TEST_CASE("frechet derivative against central differences") {
  const AlgebraShape shape({3});
  const double h = 1e-5;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double g = 0.1 * (1 + seed % 9);
    const GammaVector x = ell_gamma(random_state(shape, mix_seed(seed, 17), true), g);
    HermitianElement dir = random_hermitian(shape, mix_seed(seed, 18));
    dir = dir.scaled(1.0 / std::max(1.0, dir.frobenius_norm()));
    const double analytic = pairing(GammaVector::from_element(g, dir), psi_gamma_gradient(x));
    if (std::abs(analytic) < 1e-3) continue;
    const double numeric = (psi_gamma(GammaVector::from_element(g, x.as_element() + dir.scaled(h))) -
                            psi_gamma(GammaVector::from_element(g, x.as_element() - dir.scaled(h)))) /
                           (2.0 * h);
    CHECK(std::abs(analytic - numeric) / std::abs(analytic) <= 1e-5);
  }
}

TEST_CASE("fenchel conjugate estimate") {
  // quadratic case: conjugate of half the squared norm is itself
  const GammaVector eye(0.5, AlgebraShape({2}), {Matrix::Identity(2, 2)});
  const FenchelEstimate quad = fenchel_dual_estimate(eye);
  CHECK(quad.converged);
  CHECK(quad.value == doctest::Approx(1.0).epsilon(1e-9));

  // zero argument: the supremum sits at the origin
  const FenchelEstimate zero = fenchel_dual_estimate(GammaVector::zero(0.4, AlgebraShape({2})));
  CHECK(zero.value == doctest::Approx(0.0));

  // closed form on embeddings
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const AlgebraShape shape({static_cast<int>(2 + seed % 2)});
    const State phi = random_state(shape, mix_seed(seed, 19), true);
    for (double g : {0.3, 0.5, 0.7}) {
      const FenchelEstimate est = fenchel_dual_estimate(ell_gamma(phi, 1.0 - g));
      CHECK(std::abs(est.value - phi.trace() / g) <= 1e-6);
      CHECK(est.value <= phi.trace() / g + 1e-6);
    }
  }

  // larger blocks and a block-diagonal shape
  for (const AlgebraShape& shape : {AlgebraShape({8}), AlgebraShape({4, 3})}) {
    const State phi = random_state(shape, 91, false);
    const FenchelEstimate est = fenchel_dual_estimate(ell_gamma(phi, 0.6));
    CHECK(std::abs(est.value - phi.trace() / 0.4) <= 1e-6);
  }
}

TEST_CASE("fenchel estimate from a cold start") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const AlgebraShape shape({2});
    const State phi = random_state(shape, mix_seed(seed, 20), true);
    for (double g : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      FenchelOptions opts;
      opts.cold_start = true;
      const FenchelEstimate est = fenchel_dual_estimate(ell_gamma(phi, 1.0 - g), opts);
      CHECK(est.converged);
      CHECK(std::abs(est.value - phi.trace() / g) <= 1e-6);
    }
  }
}
