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

#pragma once

/**
 * Brute-force verification backend: direct density-matrix evolution in a
 * truncated Fock space (levels 0..D-1 per mode, lexicographic multi-index
 * order with mode 0 most significant).
 *
 * Truncation policy: states are never renormalized mid-circuit; the trace
 * deficit 1 - Tr(rho) is carried and reported. Operators come from the
 * truncated ladder matrix a(n, n+1) = sqrt(n+1); unitaries are matrix
 * exponentials of the truncated generators, which are exactly unitary on the
 * truncated space but only approximate the infinite-dimensional operator
 * away from low occupation (exact unitarity of the *intended* operator is
 * not expected at finite D).
 */

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvb/gaussian.hpp"

namespace cvb {

/// Hard cap on the density-matrix dimension D^n (e.g. D=12 with 4 modes);
/// larger requests are rejected to keep the oracle desk-scale.
inline constexpr long kMaxFockDim = 20736;

/// Occupation guard: oracle runs refuse cutoffs where the predicted mean
/// occupation of any mode at any stage exceeds D / kOccupationFraction.
inline constexpr double kOccupationFraction = 3.0;

/// Thrown when a request exceeds the D^n cap or the occupation guard.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Truncated multimode density matrix. rho is D^n x D^n; Hermiticity and
/// positivity are maintained by construction, trace may fall below one
/// (truncation loss), never silently renormalized.
struct FockDensity {
  int n_modes = 1;
  int cutoff = 2;
  CMat rho;

  long dim() const { return rho.rows(); }
  double trace_deficit() const { return 1.0 - rho.trace().real(); }
};

/// Truncated unitary with a provenance label. truncation_risk is set by the
/// builders when the operator itself is predicted to push occupation past
/// the guard fraction.
struct FockUnitary {
  enum class Label { Displacement, BeamSplitter, Squeezer };
  Label label = Label::Displacement;
  int n_modes = 1;
  int cutoff = 2;
  bool truncation_risk = false;
  CMat matrix;
};

/// Truncated ladder (annihilation) matrix, a(n, n+1) = sqrt(n+1).
CMat ladder_matrix(int cutoff);

/// Thermal state at cutoff D: p_n = (nbar/(nbar+1))^n / (nbar+1) for n < D.
/// The trace deficit equals (nbar/(nbar+1))^D.
FockDensity thermal_fock(double nbar, int cutoff);

/// D(alpha) rho_nbar D(alpha)^dag at cutoff D.
FockDensity displaced_thermal_fock(double nbar, complexd alpha, int cutoff);

/// exp(alpha a^dag - conj(alpha) a), truncated.
FockUnitary displacement_fock(complexd alpha, int cutoff);

/// exp(theta (a^dag b - a b^dag)): a -> cos(theta) a + sin(theta) b in the
/// Heisenberg picture (same convention as cvb::beam_splitter).
FockUnitary beam_splitter_fock(double theta, int cutoff);

/// exp(r (a^dag b^dag - a b)): a -> cosh(r) a + sinh(r) b^dag.
FockUnitary squeezer_fock(double r, int cutoff);

FockDensity tensor_fock(const FockDensity& a, const FockDensity& b);

/// Apply a 1- or 2-mode unitary to the given target modes of a multimode
/// state (identity elsewhere).
FockDensity apply_fock_unitary(const FockDensity& state, const FockUnitary& unitary,
                               std::span<const int> targets);

/// Partial trace keeping the listed modes in the listed order.
FockDensity reduced(const FockDensity& state, std::span<const int> keep);

/// <a>, noise sum and effective photon number of one mode. Expectations are
/// taken against rho / Tr(rho); the state itself is left subnormalized.
ModeStats fock_mode_stats(const FockDensity& state, int mode);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 in [0, 1]. Both
/// arguments are normalized by their traces before comparison.
double fidelity(const FockDensity& rho, const FockDensity& sigma);

struct OracleCopy {
  complexd amplitude;
  double noise_sum = 0.0;
  double nbar_eff = 0.0;
  double fidelity_to_predicted = 0.0;
};

struct OracleReport {
  int n = 0;
  int m = 0;
  double nbar_in = 0.0;
  complexd alpha;
  int cutoff = 0;
  long samples = 0;  // Monte-Carlo runs only.
  double trace_deficit = 0.0;
  double predicted_tail_budget = 0.0;    // sum of stage-level predicted tails
  double max_predicted_occupation = 0.0; // max mean photon number over stages
  complexd expected_amplitude;
  double expected_noise_sum = 0.0;
  std::vector<OracleCopy> copies;
  std::vector<FockDensity> copy_states;  // reduced single-mode density matrices
};

/// Full Fock-space run of the broadcast circuit (concentration beam
/// splitter, amplifier as a two-mode squeezer over a vacuum ancilla traced
/// out, distribution cascade over vacua). N <= 2, M <= 3, M >= N.
OracleReport oracle_broadcast(int n, int m, double nbar, complexd alpha, int cutoff);

/// As oracle_broadcast without the amplifier; redistributes over N ports and
/// keeps M <= N copies. N <= 3, M <= 2.
OracleReport oracle_purify(int n, int m, double nbar, complexd alpha, int cutoff);

/// Monte-Carlo heterodyne-and-prepare: samples outcomes from the Husimi Q
/// distribution of the concentrated mode (complex Gaussian with mean
/// sqrt(N) alpha and per-quadrature variance gamma/2 + 1/4), prepares
/// coherent states at conj(outcome)/sqrt(N), and averages. Requires
/// samples >= 10^4. Deliberately independent from the closed-form channel
/// used by the Gaussian lane.
OracleReport oracle_phase_conjugate(int n, int m, double nbar, complexd alpha,
                                    int cutoff, long samples, std::uint64_t seed);

}  // namespace cvb
