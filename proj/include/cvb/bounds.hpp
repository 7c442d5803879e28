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
 * Closed-form noise bounds for N -> M broadcasting, purification, and
 * phase-conjugating broadcasting of harmonic-oscillator modes, together with
 * the linear-amplifier added-noise bound they derive from. "gamma" always
 * denotes the input noise sum Var(x) + Var(y) of a mode (>= 1/2 by the
 * uncertainty relation); the returned value is the minimal achievable output
 * noise sum.
 */

#include "cvb/gaussian.hpp"

namespace cvb {

/// Minimal per-copy output noise for N -> M broadcasting (M >= N):
/// 1/2 + (gamma - 1/2)/N + 1/N - 1/M.
double broadcast_bound(double gamma, int n, int m);

/// Minimal output noise for purification to any M <= N copies:
/// 1/2 + (gamma - 1/2)/N, independent of M.
double purification_bound(double gamma, int n);

/// Minimal output noise for phase-conjugating broadcasting:
/// 1/2 + (gamma + 1/2)/N, independent of M; the M -> infinity limit of the
/// broadcast bound.
double phase_conj_bound(double gamma, int n);

/// Added-noise bound for a linear amplifier of power gain G:
/// G * input_sum + |G -+ 1|/2, upper sign for phase-preserving.
double amplifier_bound(double input_sum, double gain, AmplifierKind kind);

/// Thermal-photon threshold above which broadcasting reduces per-copy noise
/// (superbroadcasting): (M - N) / (M (N - 1)), for M > N >= 2.
double superbroadcast_threshold(int n, int m);

enum class BoundKind { Broadcast, Purify, PhaseConjugate, Amplifier };

/// Bundled query for a single bound evaluation (used by the CLI front end).
struct BoundQuery {
  double gamma = 0.5;
  int n = 1;
  int m = 1;
  BoundKind kind = BoundKind::Broadcast;
  double gain = 1.0;                                    // Amplifier only.
  AmplifierKind amp_kind = AmplifierKind::PhasePreserving;  // Amplifier only.
};

double evaluate_bound(const BoundQuery& query);

/// Result of an entrywise Cauchy-Schwarz check on number correlations.
struct CauchySchwarzReport {
  bool holds = false;           // |<b_i^dag b_j>| <= sqrt(<n_i><n_j>) + tol everywhere
  bool all_saturated = false;   // every off-diagonal pair is an equality within tol
  double max_violation = 0.0;   // max of |<b_i^dag b_j>| - sqrt(<n_i><n_j>)
  Mat slack;                    // per-pair sqrt(<n_i><n_j>) - |<b_i^dag b_j>|
};

/// Checks |<b_i^dag b_j>| <= sqrt(<b_i^dag b_i><b_j^dag b_j>) entrywise on the
/// full second moments, i.e. with the coherent background restored from the
/// amplitudes: <b_i^dag b_j> = C_ij + conj(alpha_i) alpha_j.
CauchySchwarzReport check_cauchy_schwarz(const CMat& correlations, const CVec& amplitudes,
                                         double tol = kStructuralTol);

}  // namespace cvb
