// Copyright 2026 The cvbroadcast developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "cvb/gaussian.hpp"
#include "test_util.hpp"

using namespace cvb;
using cvb::testing::max_abs_diff;
using cvb::testing::random_gaussian_state;
using cvb::testing::random_symplectic;

namespace {

double min_uncertainty_eigenvalue(const GaussianState& state) {
  const Mat omega = symplectic_form(state.n_modes());
  const CMat h = state.cov().cast<complexd>() + complexd(0, 0.25) * omega.cast<complexd>();
  Eigen::SelfAdjointEigenSolver<CMat> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("displaced thermal states") {
  const GaussianState vac = displaced_thermal(0.0, {0.0, 0.0});
  CHECK(max_abs_diff(vac.cov(), 0.25 * Mat::Identity(2, 2)) == 0.0);
  CHECK(vac.mean().cwiseAbs().maxCoeff() == 0.0);
  CHECK(mode_stats(vac, 0).noise_sum == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(mode_stats(vac, 0).nbar_eff == doctest::Approx(0.0).epsilon(1e-14));

  const GaussianState warm = displaced_thermal(1.0, {0.3, 0.1});
  const ModeStats stats = mode_stats(warm, 0);
  CHECK(stats.noise_sum == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(stats.amplitude.real() == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(stats.amplitude.imag() == doctest::Approx(0.1).epsilon(1e-14));

  const GaussianState half = displaced_thermal(0.5, {0.0, 0.0});
  CHECK(max_abs_diff(half.cov(), 0.5 * Mat::Identity(2, 2)) < 1e-15);
  CHECK(mode_stats(half, 0).noise_sum == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(displaced_thermal(-0.1, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("tensor product") {
  const GaussianState vac = GaussianState::vacuum(1);
  const std::vector<GaussianState> pair{vac, vac};
  const GaussianState two = tensor_product(pair);
  CHECK(two.n_modes() == 2);
  CHECK(max_abs_diff(two.cov(), 0.25 * Mat::Identity(4, 4)) == 0.0);

  const complexd alpha{0.2, -0.4};
  const std::vector<GaussianState> thermals{displaced_thermal(1.0, alpha),
                                            displaced_thermal(1.0, alpha)};
  const GaussianState prod = tensor_product(thermals);
  for (int i = 0; i < 2; ++i)
    CHECK(mode_stats(prod, i).noise_sum == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(prod.cov().block<2, 2>(0, 2).cwiseAbs().maxCoeff() == 0.0);

  // N = 2 copies of thermal(0.5, 0.4): equal-amplitude input with gamma_i = 1.
  const std::vector<GaussianState> inputs{displaced_thermal(0.5, {0.4, 0.0}),
                                          displaced_thermal(0.5, {0.4, 0.0})};
  const GaussianState xi = tensor_product(inputs);
  for (int i = 0; i < 2; ++i) {
    CHECK(mode_stats(xi, i).noise_sum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mode_stats(xi, i).amplitude.real() == doctest::Approx(0.4).epsilon(1e-14));
  }

  CHECK_THROWS_AS(tensor_product({}), std::invalid_argument);
}

TEST_CASE("multisplitter") {
  CHECK(max_abs_diff(multisplitter(1).matrix(), Mat::Identity(2, 2)) < 1e-15);
  CHECK_THROWS_AS(multisplitter(0), std::invalid_argument);

  // n = 2 concentrates equal amplitudes into mode 0 with gain sqrt(2).
  const complexd alpha{0.3, -0.2};
  const std::vector<GaussianState> two{displaced_thermal(1.0, alpha),
                                       displaced_thermal(1.0, alpha)};
  const GaussianState conc = apply_symplectic(tensor_product(two), multisplitter(2));
  const ModeStats c0 = mode_stats(conc, 0);
  CHECK(std::abs(c0.amplitude - std::sqrt(2.0) * alpha) < 1e-12);
  CHECK(c0.noise_sum == doctest::Approx(1.5).epsilon(1e-12));

  // n = 3 against an explicitly realified DFT (independent construction).
  Mat expected(6, 6);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) {
      const double phase = 2.0 * std::numbers::pi * k * l / 3.0;
      const double p = std::cos(phase) / std::sqrt(3.0);
      const double q = std::sin(phase) / std::sqrt(3.0);
      expected(2 * k, 2 * l) = p;
      expected(2 * k, 2 * l + 1) = -q;
      expected(2 * k + 1, 2 * l) = q;
      expected(2 * k + 1, 2 * l + 1) = p;
    }
  CHECK(max_abs_diff(multisplitter(3).matrix(), expected) < 1e-14);

  Vec means(6);
  means << 0.3, -0.2, 0.3, -0.2, 0.3, -0.2;
  const Vec out = expected * means;
  const std::vector<GaussianState> three(3, displaced_thermal(0.2, alpha));
  const GaussianState conc3 = apply_symplectic(tensor_product(three), multisplitter(3));
  CHECK((conc3.mean() - out).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(std::abs(mode_stats(conc3, 0).amplitude - std::sqrt(3.0) * alpha) < 1e-12);
  CHECK(std::abs(mode_stats(conc3, 1).amplitude) < 1e-12);
  CHECK(std::abs(mode_stats(conc3, 2).amplitude) < 1e-12);

  for (int n : {1, 2, 3, 4, 5, 7}) {
    const Mat s = multisplitter(n).matrix();
    CHECK(max_abs_diff(s.transpose() * s, Mat::Identity(2 * n, 2 * n)) <= 1e-10);
    const Mat omega = symplectic_form(n);
    CHECK(max_abs_diff(s * omega * s.transpose(), omega) <= 1e-10);
  }
}

TEST_CASE("beam splitter") {
  CHECK(max_abs_diff(beam_splitter(0.0, 0, 1, 2).matrix(), Mat::Identity(4, 4)) == 0.0);
  CHECK_THROWS_AS(beam_splitter(0.3, 1, 1, 2), std::invalid_argument);

  const complexd alpha{0.4, 0.2};
  const std::vector<GaussianState> in{displaced_thermal(0.0, alpha), GaussianState::vacuum(1)};
  const GaussianState swapped =
      apply_symplectic(tensor_product(in), beam_splitter(std::numbers::pi / 2, 0, 1, 2));
  CHECK(std::abs(mode_stats(swapped, 0).amplitude) < 1e-12);
  CHECK(std::abs(std::abs(mode_stats(swapped, 1).amplitude) - std::abs(alpha)) < 1e-12);

  // theta = pi/4 on means (alpha, 0) -> (alpha/sqrt2, -alpha/sqrt2) in this
  // sign convention (a_j picks up the minus).
  const GaussianState split =
      apply_symplectic(tensor_product(in), beam_splitter(std::numbers::pi / 4, 0, 1, 2));
  CHECK(std::abs(mode_stats(split, 0).amplitude - alpha / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(mode_stats(split, 1).amplitude + alpha / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("two-mode squeezer") {
  CHECK(max_abs_diff(two_mode_squeezer(0.0, 0, 1, 2).matrix(), Mat::Identity(4, 4)) == 0.0);
  CHECK_THROWS_AS(two_mode_squeezer(0.5, 0, 0, 2), std::invalid_argument);

  // cosh^2 r = 2: gain-2 quantum-limited amplification of a coherent state.
  // Output noise saturates the amplifier bound: 2 * (1/2) + (2-1)/2 = 3/2.
  const double r = std::acosh(std::sqrt(2.0));
  const complexd alpha{0.3, 0.1};
  const std::vector<GaussianState> in{displaced_thermal(0.0, alpha), GaussianState::vacuum(1)};
  const GaussianState out = apply_symplectic(tensor_product(in), two_mode_squeezer(r, 0, 1, 2));
  CHECK(std::abs(mode_stats(out, 0).amplitude - std::sqrt(2.0) * alpha) < 1e-12);
  CHECK(mode_stats(out, 0).noise_sum == doctest::Approx(1.5).epsilon(1e-12));

  const Mat s = two_mode_squeezer(0.7, 0, 1, 2).matrix();
  const Mat omega = symplectic_form(2);
  CHECK(max_abs_diff(s * omega * s.transpose(), omega) <= 1e-10);
  CHECK(s.determinant() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("amplifier channel") {
  const GaussianChannel id = amplifier_channel(1.0, AmplifierKind::PhasePreserving);
  CHECK(max_abs_diff(id.X(), Mat::Identity(2, 2)) < 1e-15);
  CHECK(id.Y().cwiseAbs().maxCoeff() == 0.0);

  // Gain 3/2 on a noise-1.5 mode: the 2->3 amplification stage value.
  const GaussianState in = displaced_thermal(1.0, {0.2, 0.0});
  const GaussianState amped =
      apply_channel(in, amplifier_channel(1.5, AmplifierKind::PhasePreserving));
  CHECK(mode_stats(amped, 0).noise_sum == doctest::Approx(2.5).epsilon(1e-12));

  const GaussianState conj_out = apply_channel(
      GaussianState::vacuum(1), amplifier_channel(1.0, AmplifierKind::PhaseConjugating));
  CHECK(mode_stats(conj_out, 0).noise_sum == doctest::Approx(1.5).epsilon(1e-12));

  CHECK_THROWS_AS(amplifier_channel(0.9, AmplifierKind::PhasePreserving),
                  std::invalid_argument);

  // Quantum-limited noise identity: output = G * input + (G-1)/2 exactly.
  for (double gain : {1.0, 1.3, 2.0, 3.7}) {
    for (double nbar : {0.0, 0.4, 1.2}) {
      const GaussianState state = displaced_thermal(nbar, {0.1, -0.3});
      const GaussianState out =
          apply_channel(state, amplifier_channel(gain, AmplifierKind::PhasePreserving));
      const double expected = gain * (nbar + 0.5) + (gain - 1.0) / 2.0;
      CHECK(mode_stats(out, 0).noise_sum == doctest::Approx(expected).epsilon(1e-13));
      const GaussianState out_conj =
          apply_channel(state, amplifier_channel(gain, AmplifierKind::PhaseConjugating));
      CHECK(mode_stats(out_conj, 0).noise_sum ==
            doctest::Approx(gain * (nbar + 0.5) + (gain + 1.0) / 2.0).epsilon(1e-13));
      CHECK(std::abs(mode_stats(out_conj, 0).amplitude -
                     std::sqrt(gain) * std::conj(mode_stats(state, 0).amplitude)) < 1e-12);
    }
  }
}

TEST_CASE("apply, vacuum, partial trace round trips") {
  const GaussianState vac3 = GaussianState::vacuum(3);
  const GaussianState still_vac = apply_symplectic(vac3, multisplitter(3));
  CHECK(max_abs_diff(still_vac.cov(), vac3.cov()) < 1e-14);
  CHECK(still_vac.mean().cwiseAbs().maxCoeff() < 1e-15);

  const GaussianState a = displaced_thermal(0.7, {0.1, 0.2});
  const GaussianState b = displaced_thermal(0.2, {-0.4, 0.0});
  const std::vector<GaussianState> both{a, b};
  const GaussianState prod = tensor_product(both);
  const int keep_b[] = {1};
  const GaussianState back = partial_trace(prod, keep_b);
  CHECK(max_abs_diff(back.cov(), b.cov()) == 0.0);
  CHECK((back.mean() - b.mean()).cwiseAbs().maxCoeff() == 0.0);

  const GaussianState grown = add_vacuum(a, 2);
  CHECK(grown.n_modes() == 3);
  const int keep_first[] = {0};
  const GaussianState shrunk = partial_trace(grown, keep_first);
  CHECK(max_abs_diff(shrunk.cov(), a.cov()) == 0.0);

  const int bad[] = {5};
  CHECK_THROWS_AS(partial_trace(a, bad), std::invalid_argument);
}

TEST_CASE("mode stats") {
  CHECK(mode_stats(GaussianState::vacuum(1), 0).noise_sum ==
        doctest::Approx(0.5).epsilon(1e-14));

  const complexd alpha{0.25, -0.15};
  CHECK(mode_stats(displaced_thermal(1.0, alpha), 0).noise_sum ==
        doctest::Approx(1.5).epsilon(1e-14));

  const std::vector<GaussianState> two(2, displaced_thermal(1.0, alpha));
  const GaussianState conc = apply_symplectic(tensor_product(two), multisplitter(2));
  CHECK(std::abs(mode_stats(conc, 0).amplitude - std::sqrt(2.0) * alpha) < 1e-12);
  CHECK(mode_stats(conc, 0).noise_sum == doctest::Approx(1.5).epsilon(1e-12));

  CHECK_THROWS_AS(mode_stats(GaussianState::vacuum(1), 1), std::invalid_argument);
}

TEST_CASE("pairwise number correlations") {
  const std::vector<GaussianState> parts{displaced_thermal(0.8, {0.3, 0.0}),
                                         displaced_thermal(0.3, {0.3, 0.0})};
  const GaussianState prod = tensor_product(parts);
  const CMat c = pairwise_number_correlations(prod);
  CHECK(std::abs(c(0, 1)) < 1e-14);
  CHECK(std::abs(c(1, 0)) < 1e-14);
  CHECK(c(0, 0).real() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(c(1, 1).real() == doctest::Approx(0.3).epsilon(1e-12));

  std::mt19937_64 rng(411);
  for (int trial = 0; trial < 20; ++trial) {
    const GaussianState state = random_gaussian_state(rng, 3);
    const CMat corr = pairwise_number_correlations(state);
    CHECK((corr - corr.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i < 3; ++i) {
      CHECK(corr(i, i).imag() == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(corr(i, i).real() ==
            doctest::Approx(mode_stats(state, i).nbar_eff).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: symplectic maps preserve structure") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + int(rng() % 4);
    const SymplecticMap s = random_symplectic(rng, n);
    const Mat omega = symplectic_form(n);
    CHECK(max_abs_diff(s.matrix() * omega * s.matrix().transpose(), omega) <= 1e-10);

    const GaussianState state = random_gaussian_state(rng, n);
    const GaussianState mapped = apply_symplectic(state, s);
    CHECK(min_uncertainty_eigenvalue(mapped) >= -1e-10);

    const GaussianState back = apply_symplectic(mapped, s.inverse());
    CHECK(max_abs_diff(back.cov(), state.cov()) < 1e-9);
  }
}

TEST_CASE("property: passive maps preserve total photon number") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + int(rng() % 3);
    const GaussianState state = random_gaussian_state(rng, n);
    const double before = total_photon_number(state);
    const GaussianState split = apply_symplectic(state, multisplitter(n));
    CHECK(total_photon_number(split) == doctest::Approx(before).epsilon(1e-10));
    const GaussianState rotated =
        apply_symplectic(state, beam_splitter(0.37 + 0.1 * trial, 0, n - 1, n));
    CHECK(total_photon_number(rotated) == doctest::Approx(before).epsilon(1e-10));
  }
}

TEST_CASE("channel complete positivity holds for in-scope channels") {
  for (double gain : {1.0, 1.5, 2.0, 4.0}) {
    for (AmplifierKind kind :
         {AmplifierKind::PhasePreserving, AmplifierKind::PhaseConjugating}) {
      const GaussianChannel ch = amplifier_channel(gain, kind);
      const Mat antisym =
          symplectic_form(1) - ch.X() * symplectic_form(1) * ch.X().transpose();
      const CMat h =
          ch.Y().cast<complexd>() + complexd(0, 0.25) * antisym.cast<complexd>();
      Eigen::SelfAdjointEigenSolver<CMat> solver(h, Eigen::EigenvaluesOnly);
      CHECK(solver.eigenvalues().minCoeff() >= -1e-10);
    }
  }
  // A non-CP map must be rejected: gain without added noise.
  CHECK_THROWS_AS(GaussianChannel(2.0 * Mat::Identity(2, 2), Mat::Zero(2, 2)),
                  std::invalid_argument);
}
