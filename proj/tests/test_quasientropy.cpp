#include <doctest.h>

#include <cmath>

#include "qgamma/divergence.hpp"
#include "qgamma/quasientropy.hpp"

using namespace qgamma;

namespace {

State rank_one_projector() {
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return State(AlgebraShape({2}), {m});
}

State basis_projector() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, 0.0;
  return State(AlgebraShape({2}), {m});
}

State drop_smallest(const State& s) {
  auto vals = s.eigenvalues();
  for (auto& v : vals) v[0] = 0.0;
  return State::from_spectral(s.shape(), vals, s.eigenvectors());
}

}  // namespace

TEST_CASE("relative modular data") {
  Matrix half(2, 2);
  half << 0.5, 0.0, 0.0, 0.5;
  const State s(AlgebraShape({2}), {half});
  const RelativeModularData same = relative_modular_data(s, s);
  CHECK(same.alphas[0] == doctest::Approx(0.5));
  CHECK(same.betas[1] == doctest::Approx(0.5));
  // degenerate spectrum: the overlap matrix is some doubly stochastic
  // rotation of the identity; rows and columns still sum to one
  for (int i = 0; i < 2; ++i) {
    CHECK(same.overlap.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(same.overlap.col(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
  }

  // basis projector vs the plus projector: every overlap is 1/2
  const RelativeModularData cross = relative_modular_data(basis_projector(), rank_one_projector());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) CHECK(cross.overlap(i, j) == doctest::Approx(0.5));
  }

  // distinct diagonal states align along the basis
  const RelativeModularData diag =
      relative_modular_data(diagonal_state({0.2, 0.8}), diagonal_state({0.6, 0.4}));
  CHECK(diag.overlap(0, 0) == doctest::Approx(1.0));
  CHECK(diag.overlap(0, 1) == doctest::Approx(0.0));

  CHECK_THROWS_AS(relative_modular_data(s, diagonal_state({1.0})), ShapeMismatchError);
}

TEST_CASE("overlap rows and columns sum to one") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const AlgebraShape shape({3, 2});
    const RelativeModularData data = relative_modular_data(
        random_state(shape, mix_seed(seed, 1), true), random_state(shape, mix_seed(seed, 2), false));
    for (int i = 0; i < shape.total_dim(); ++i) {
      CHECK(data.overlap.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(data.overlap.col(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
      for (int j = 0; j < shape.total_dim(); ++j) CHECK(data.overlap(i, j) >= 0.0);
    }
  }
}

TEST_CASE("weight function") {
  for (double g : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CHECK(f_gamma(1.0, g) == doctest::Approx(0.0));
  }
  CHECK(f_gamma(4.0, 0.5) == doctest::Approx(2.0));
  CHECK(f_gamma(0.0, 0.5) == doctest::Approx(2.0));
  CHECK_THROWS_AS(f_gamma(2.0, 0.0), GammaOutOfRangeError);
  CHECK_THROWS_AS(f_gamma(-1.0, 0.5), NotPositiveError);

  // nonnegativity over a wide logarithmic grid
  for (int e = -6; e <= 6; ++e) {
    const double t = std::pow(10.0, e);
    for (double g : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
      CHECK(f_gamma(t, g) >= 0.0);
    }
  }
}

TEST_CASE("quasi-entropy examples") {
  const State s = diagonal_state({0.4, 0.6});
  for (double g : {0.2, 0.5, 0.8}) {
    CHECK(quasi_entropy_gamma(s, s, g) == doctest::Approx(0.0).epsilon(1e-12));
  }

  CHECK(quasi_entropy_gamma(basis_projector(), rank_one_projector(), 0.5) ==
        doctest::Approx(2.0).epsilon(1e-12));

  const double oracle = 4.0 * (1.0 - std::sqrt(0.375) - std::sqrt(0.125));
  CHECK(quasi_entropy_gamma(diagonal_state({0.5, 0.5}), diagonal_state({0.75, 0.25}), 0.5) ==
        doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("equivalence with the divergence on random pairs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const AlgebraShape shape({static_cast<int>(2 + seed % 3), 2});
    State omega = random_state(shape, mix_seed(seed, 3), true);
    State phi = random_state(shape, mix_seed(seed, 4), false);
    if (seed % 3 == 0) omega = drop_smallest(omega);
    if (seed % 4 == 0) phi = drop_smallest(phi);
    for (int k = 1; k <= 9; ++k) {
      const double g = 0.1 * k;
      CHECK(std::abs(quasi_entropy_gamma(omega, phi, g) - gamma_divergence(omega, phi, g).value) <=
            1e-9);
    }
  }
}

TEST_CASE("spectral cross-check of the sandwich trace") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const AlgebraShape shape({4});
    const State omega = random_state(shape, mix_seed(seed, 5), true);
    const State phi = random_state(shape, mix_seed(seed, 6), true);
    for (double g : {0.3, 0.5, 0.7}) {
      const RelativeModularData data = relative_modular_data(omega, phi);
      double spectral_sum = 0.0;
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          spectral_sum +=
              std::pow(data.alphas[i], g) * std::pow(data.betas[j], 1.0 - g) * data.overlap(i, j);
        }
      }
      const State a = matrix_power(omega, g);
      const State b = matrix_power(phi, 0.5 * (1.0 - g));
      const double sandwich = (b.block(0) * a.block(0) * b.block(0)).trace().real();
      CHECK(spectral_sum == doctest::Approx(sandwich).epsilon(1e-10));
    }
  }
}
