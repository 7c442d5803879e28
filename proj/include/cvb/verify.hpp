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
 * Cross-validation of the Gaussian simulator against the brute-force Fock
 * oracle: runs a case (or the default case suite) on both backends and
 * compares per-copy amplitude, noise sum, and state fidelity.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cvb/fock.hpp"

namespace cvb {

enum class CircuitKind { Broadcast, Purify, PhaseConjugate };

struct VerifyCase {
  std::string name;
  CircuitKind kind = CircuitKind::Broadcast;
  int n = 1;
  int m = 1;
  double nbar = 0.0;
  complexd alpha;
  int cutoff = 12;
  double tol_noise = 5e-3;      // |oracle noise_sum - Gaussian gamma_out|
  double min_fidelity = 0.999;  // per-copy Uhlmann fidelity
};

struct VerifyOptions {
  std::optional<int> cutoff;  // override every case's cutoff
  long samples = 100000;      // Monte-Carlo runs
  std::uint64_t seed = 12345;
};

struct VerifyResult {
  VerifyCase spec;
  long samples = 0;  // nonzero for Monte-Carlo cases
  double expected_noise_sum = 0.0;
  complexd expected_amplitude;
  double max_noise_delta = 0.0;
  double max_amp_delta = 0.0;
  double min_fidelity = 0.0;
  double trace_deficit = 0.0;
  double predicted_tail_budget = 0.0;
  double tol_amp = 0.0;
  bool pass = false;
};

/// The canonical comparison grid (broadcast, purify, and phase-conjugate
/// cases at desk-scale cutoffs).
std::vector<VerifyCase> default_verify_cases();

VerifyResult run_verify_case(const VerifyCase& spec, const VerifyOptions& options);

std::vector<VerifyResult> run_verify_suite(const std::vector<VerifyCase>& cases,
                                           const VerifyOptions& options);

}  // namespace cvb
