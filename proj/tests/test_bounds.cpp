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

#include <stdexcept>

#include <doctest.h>

#include "cvb/bounds.hpp"
#include "cvb/circuits.hpp"
#include "test_util.hpp"

using namespace cvb;
using cvb::testing::random_gaussian_state;

TEST_CASE("broadcast bound values") {
  CHECK(broadcast_bound(1.5, 2, 3) == doctest::Approx(7.0 / 6.0).epsilon(1e-15));
  CHECK(broadcast_bound(0.5, 1, 2) == doctest::Approx(1.0).epsilon(1e-15));
  // M -> infinity limit coincides with the phase-conjugation bound.
  for (double gamma : {0.5, 1.0, 2.3}) {
    for (int n : {1, 2, 5}) {
      CHECK(broadcast_bound(gamma, n, 1000000000) ==
            doctest::Approx(phase_conj_bound(gamma, n)).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(broadcast_bound(1.0, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(broadcast_bound(0.4, 2, 3), std::invalid_argument);
}

TEST_CASE("purification bound values") {
  CHECK(purification_bound(1.5, 4) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(purification_bound(0.5, 7) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(purification_bound(1.5, 1) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("phase conjugation bound values") {
  CHECK(phase_conj_bound(1.5, 2) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(phase_conj_bound(0.5, 1) == doctest::Approx(1.5).epsilon(1e-15));
  // Dominates the broadcast bound for every finite M (the gap is exactly 1/M).
  for (double gamma : {0.5, 0.8, 1.7}) {
    for (int n : {1, 2, 4}) {
      for (int m : {2, 5, 12, 40}) {
        if (m <= n) continue;
        CHECK(phase_conj_bound(gamma, n) - broadcast_bound(gamma, n, m) ==
              doctest::Approx(1.0 / m).epsilon(1e-12));
        CHECK(phase_conj_bound(gamma, n) >= broadcast_bound(gamma, n, m));
      }
    }
  }
}

TEST_CASE("amplifier bound values") {
  CHECK(amplifier_bound(0.5, 1.0, AmplifierKind::PhasePreserving) ==
        doctest::Approx(0.5).epsilon(1e-15));
  CHECK(amplifier_bound(1.5, 1.5, AmplifierKind::PhasePreserving) ==
        doctest::Approx(2.5).epsilon(1e-15));
  CHECK(amplifier_bound(0.5, 1.0, AmplifierKind::PhaseConjugating) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK_THROWS_AS(amplifier_bound(0.5, 0.0, AmplifierKind::PhasePreserving),
                  std::invalid_argument);
}

TEST_CASE("superbroadcast threshold") {
  CHECK(superbroadcast_threshold(2, 3) == 1.0 / 3.0);
  CHECK(superbroadcast_threshold(4, 5) == doctest::Approx(1.0 / 15.0).epsilon(1e-15));
  // Large-M limit of the formula is 1/(N-1).
  CHECK(superbroadcast_threshold(2, 1000000000) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(superbroadcast_threshold(3, 1000000000) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK_THROWS_AS(superbroadcast_threshold(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(superbroadcast_threshold(3, 3), std::invalid_argument);
}

TEST_CASE("bound monotonicity and floor") {
  for (double gamma : {0.5, 0.75, 1.5, 3.0}) {
    for (int m : {5, 9}) {
      for (int n = 1; n < m; ++n) {
        CHECK(broadcast_bound(gamma, n, m) >= 0.5);
        if (n > 1)
          CHECK(broadcast_bound(gamma, n, m) < broadcast_bound(gamma, n - 1, m));
      }
    }
    for (int n : {1, 2, 3}) {
      for (int m = n + 1; m < n + 6; ++m)
        CHECK(broadcast_bound(gamma, n, m + 1) > broadcast_bound(gamma, n, m));
    }
  }
  // Coherent input: excess over the vacuum floor is exactly 1/N - 1/M.
  for (int n : {1, 2, 4})
    for (int m = n; m < n + 5; ++m)
      CHECK(broadcast_bound(0.5, n, m) - 0.5 ==
            doctest::Approx(1.0 / n - 1.0 / m).epsilon(1e-15));
}

TEST_CASE("bound query dispatch") {
  BoundQuery q;
  q.gamma = 1.5;
  q.n = 2;
  q.m = 3;
  q.kind = BoundKind::Broadcast;
  CHECK(evaluate_bound(q) == doctest::Approx(7.0 / 6.0).epsilon(1e-15));
  q.kind = BoundKind::Purify;
  CHECK(evaluate_bound(q) == doctest::Approx(1.0).epsilon(1e-15));
  q.kind = BoundKind::PhaseConjugate;
  CHECK(evaluate_bound(q) == doctest::Approx(1.5).epsilon(1e-15));
  q.kind = BoundKind::Amplifier;
  q.gain = 1.5;
  CHECK(evaluate_bound(q) == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("Cauchy-Schwarz checker") {
  // Product state with zero amplitude: off-diagonal moments vanish, strict
  // inequality (nonzero slack).
  const std::vector<GaussianState> parts{displaced_thermal(0.8, {0.0, 0.0}),
                                         displaced_thermal(0.3, {0.0, 0.0})};
  const GaussianState prod = tensor_product(parts);
  CVec amps(2);
  amps << mode_stats(prod, 0).amplitude, mode_stats(prod, 1).amplitude;
  const CauchySchwarzReport product_report =
      check_cauchy_schwarz(pairwise_number_correlations(prod), amps);
  CHECK(product_report.holds);
  CHECK(!product_report.all_saturated);
  CHECK(product_report.slack(0, 1) > 0.1);

  // Optimal broadcast output: equality on all pairs.
  const BroadcastReport broadcast = run_broadcast(2, 3, 1.0, {0.3, 0.1});
  CVec out_amps(3);
  for (int i = 0; i < 3; ++i) out_amps(i) = broadcast.per_copy_amplitude[size_t(i)];
  const CauchySchwarzReport saturated =
      check_cauchy_schwarz(broadcast.correlations, out_amps);
  CHECK(saturated.holds);
  CHECK(saturated.all_saturated);

  // Random uncertainty-valid states satisfy the inequality.
  std::mt19937_64 rng(907);
  for (int trial = 0; trial < 40; ++trial) {
    const GaussianState state = random_gaussian_state(rng, 3);
    CVec a(3);
    for (int i = 0; i < 3; ++i) a(i) = mode_stats(state, i).amplitude;
    const CauchySchwarzReport r =
        check_cauchy_schwarz(pairwise_number_correlations(state), a);
    CHECK(r.holds);
  }

  CHECK_THROWS_AS(check_cauchy_schwarz(CMat::Random(2, 3), CVec::Zero(3)),
                  std::invalid_argument);
}
