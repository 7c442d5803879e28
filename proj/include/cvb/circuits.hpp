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
 * The three optimal linear-optics circuits on Gaussian states:
 *
 *   broadcast (N -> M >= N):  concentrate the N inputs with a multisplitter,
 *     discard the empty ports, amplify the concentrated mode with gain M/N,
 *     and redistribute through an inverse multisplitter over M - 1 vacua.
 *
 *   purify (M <= N):  concentrate, discard, and redistribute through an
 *     inverse N-splitter over N - 1 vacua; the first M output ports are the
 *     purified copies (noise reduction 1/N regardless of M).
 *
 *   phase conjugate:  concentrate, then heterodyne-and-prepare, realized in
 *     closed form as a Gaussian measure-and-prepare channel producing M
 *     coherent copies at conj(outcome)/sqrt(N).
 *
 * Each runner returns a BroadcastReport with per-copy statistics, the
 * relevant noise bound, and the pairwise number-correlation matrix.
 */

#include <variant>
#include <vector>

#include "cvb/gaussian.hpp"

namespace cvb {

/// Multisplitter over all live modes (inverse = distribution direction).
struct MultisplitStage {
  int n = 0;
  bool inverse = false;
};

/// Trace out the listed modes.
struct DiscardStage {
  std::vector<int> modes;
};

/// Append vacuum modes.
struct AddVacuumStage {
  int count = 0;
};

/// Quantum-limited amplifier on one mode.
struct AmplifyStage {
  double gain = 1.0;
  AmplifierKind kind = AmplifierKind::PhasePreserving;
  int mode = 0;
};

/// Heterodyne the single live mode and prepare `copies` coherent states at
/// scale * outcome (conjugated when `conjugate` is set). Closed-form Gaussian
/// measure-and-prepare channel, not Monte Carlo.
struct HeterodynePrepareStage {
  int copies = 1;
  double scale = 1.0;
  bool conjugate = true;
};

using CircuitStage = std::variant<MultisplitStage, DiscardStage, AddVacuumStage,
                                  AmplifyStage, HeterodynePrepareStage>;

struct CircuitSpec {
  int n_in = 0;
  int n_out = 0;
  std::vector<CircuitStage> stages;
};

/// The Gaussian measure-and-prepare channel behind HeterodynePrepareStage:
/// 1 -> copies modes, X blocks scale * T (T = diag(1, -1) when conjugating),
/// Y = (1/4) I + (scale^2/4) (ones x I2).
GaussianChannel heterodyne_prepare_channel(int copies, double scale, bool conjugate);

CircuitSpec build_broadcast_circuit(int n, int m);       // m >= n >= 1
CircuitSpec build_purify_circuit(int n, int m);          // 1 <= m <= n
CircuitSpec build_phase_conjugate_circuit(int n, int m); // n, m >= 1

GaussianState run_circuit(const GaussianState& input, const CircuitSpec& circuit);

/// Like run_circuit but also returns the state after every stage
/// (element 0 is the input).
std::vector<GaussianState> run_circuit_trace(const GaussianState& input,
                                             const CircuitSpec& circuit);

/// Per-copy statistics of a circuit output. All copies must agree on
/// amplitude and noise to 1e-10 (permutation invariance); violations throw.
struct BroadcastReport {
  int n = 0;
  int m = 0;
  complexd alpha_in;
  double gamma_in = 0.0;
  std::vector<complexd> per_copy_amplitude;
  double gamma_out = 0.0;
  double bound = 0.0;
  bool saturated = false;      // |gamma_out - bound| <= 1e-10
  bool superbroadcast = false; // gamma_out < gamma_in (strict; equality within
                               // 1e-12 counts as threshold, not superbroadcast)
  CMat correlations;
  double output_nbar = 0.0;
  GaussianState output_state;
};

/// Broadcast N identical displaced thermal states into M >= N copies.
BroadcastReport run_broadcast(int n, int m, double nbar_in, complexd alpha);

/// Broadcast a general product input with equal per-mode amplitudes; gamma_in
/// is the average of the per-mode noise sums. Unequal amplitudes or
/// cross-mode correlations are rejected.
BroadcastReport run_broadcast_state(const GaussianState& input, int m);

/// Purify N displaced thermal inputs into M <= N copies.
BroadcastReport run_purify(int n, int m, double nbar_in, complexd alpha);

/// Phase-conjugating broadcast: M copies with amplitude conj(alpha) and noise
/// 1/2 + (gamma + 1/2)/N, independent of M.
BroadcastReport run_phase_conjugate(int n, int m, double nbar_in, complexd alpha);

/// Closed-form M-mode output of the optimal broadcast map on displaced
/// thermal inputs: every single-mode reduction is displaced thermal with
/// nbar'' = nbar/N + (M-N)/(MN), and all cross-mode covariance blocks equal
/// (nbar'/(2M)) I with nbar' = M(nbar+1)/N - 1. Must match run_broadcast's
/// output state to 1e-10.
GaussianState predicted_output_state(int n, int m, double nbar_in, complexd alpha);

}  // namespace cvb
