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

#include "cvb/verify.hpp"

#include <algorithm>
#include <cmath>

namespace cvb {

std::vector<VerifyCase> default_verify_cases() {
  // Noise tolerances follow the general oracle-vs-Gaussian contract (5e-3)
  // with tighter values where the cutoff gives margin; the Monte-Carlo
  // phase-conjugate cases use 0.01 at >= 10^5 samples.
  return {
      {"broadcast 2->2", CircuitKind::Broadcast, 2, 2, 0.5, {0.3, 0.0}, 12, 2e-3, 0.999},
      {"broadcast 2->3", CircuitKind::Broadcast, 2, 3, 0.5, {0.2, 0.0}, 10, 5e-3, 0.999},
      {"broadcast 1->2", CircuitKind::Broadcast, 1, 2, 0.0, {0.4, 0.0}, 10, 5e-3, 0.999},
      {"purify 2->1", CircuitKind::Purify, 2, 1, 1.0, {0.3, 0.0}, 14, 2e-3, 0.999},
      {"purify 3->1", CircuitKind::Purify, 3, 1, 0.6, {0.0, 0.0}, 10, 5e-3, 0.999},
      {"purify 2->2", CircuitKind::Purify, 2, 2, 1.0, {0.0, 0.0}, 14, 2e-3, 0.999},
      {"conjugate 2->1", CircuitKind::PhaseConjugate, 2, 1, 1.0, {0.3, 0.0}, 12, 1e-2, 0.99},
      {"conjugate 1->1", CircuitKind::PhaseConjugate, 1, 1, 0.0, {0.0, 0.0}, 12, 1e-2, 0.99},
  };
}

VerifyResult run_verify_case(const VerifyCase& spec, const VerifyOptions& options) {
  VerifyCase resolved = spec;
  if (options.cutoff) resolved.cutoff = *options.cutoff;

  OracleReport oracle;
  switch (resolved.kind) {
    case CircuitKind::Broadcast:
      oracle = oracle_broadcast(resolved.n, resolved.m, resolved.nbar, resolved.alpha,
                                resolved.cutoff);
      break;
    case CircuitKind::Purify:
      oracle = oracle_purify(resolved.n, resolved.m, resolved.nbar, resolved.alpha,
                             resolved.cutoff);
      break;
    case CircuitKind::PhaseConjugate:
      oracle = oracle_phase_conjugate(resolved.n, resolved.m, resolved.nbar, resolved.alpha,
                                      resolved.cutoff, options.samples, options.seed);
      break;
  }

  VerifyResult result;
  result.spec = resolved;
  result.samples = oracle.samples;
  result.expected_noise_sum = oracle.expected_noise_sum;
  result.expected_amplitude = oracle.expected_amplitude;
  result.trace_deficit = oracle.trace_deficit;
  result.predicted_tail_budget = oracle.predicted_tail_budget;
  result.tol_amp = 1e-2 * (1.0 + std::abs(resolved.alpha));
  result.min_fidelity = 1.0;
  for (const OracleCopy& copy : oracle.copies) {
    result.max_noise_delta =
        std::max(result.max_noise_delta, std::abs(copy.noise_sum - oracle.expected_noise_sum));
    result.max_amp_delta =
        std::max(result.max_amp_delta, std::abs(copy.amplitude - oracle.expected_amplitude));
    result.min_fidelity = std::min(result.min_fidelity, copy.fidelity_to_predicted);
  }
  result.pass = result.max_noise_delta <= resolved.tol_noise &&
                result.max_amp_delta <= result.tol_amp &&
                result.min_fidelity >= resolved.min_fidelity;
  return result;
}

std::vector<VerifyResult> run_verify_suite(const std::vector<VerifyCase>& cases,
                                           const VerifyOptions& options) {
  std::vector<VerifyResult> results;
  results.reserve(cases.size());
  for (const VerifyCase& spec : cases) results.push_back(run_verify_case(spec, options));
  return results;
}

}  // namespace cvb
