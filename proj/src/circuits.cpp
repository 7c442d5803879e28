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

#include "cvb/circuits.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cvb/bounds.hpp"

namespace cvb {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Strictness guard for the superbroadcast flag: agreement within this margin
// is reported as "at threshold", not as superbroadcasting.
constexpr double kThresholdGuard = 1e-12;

GaussianState apply_stage(const GaussianState& state, const CircuitStage& stage) {
  if (const auto* ms = std::get_if<MultisplitStage>(&stage)) {
    require(state.n_modes() == ms->n, "circuit: multisplitter width mismatch");
    const SymplecticMap map = multisplitter(ms->n);
    return apply_symplectic(state, ms->inverse ? map.inverse() : map);
  }
  if (const auto* disc = std::get_if<DiscardStage>(&stage)) {
    std::vector<int> keep;
    for (int i = 0; i < state.n_modes(); ++i) {
      bool dropped = false;
      for (int d : disc->modes) dropped = dropped || (d == i);
      if (!dropped) keep.push_back(i);
    }
    require(!keep.empty(), "circuit: discard stage would remove all modes");
    return partial_trace(state, keep);
  }
  if (const auto* av = std::get_if<AddVacuumStage>(&stage)) {
    return add_vacuum(state, av->count);
  }
  if (const auto* amp = std::get_if<AmplifyStage>(&stage)) {
    const int target[] = {amp->mode};
    return apply_channel(state, amplifier_channel(amp->gain, amp->kind), target);
  }
  const auto& het = std::get<HeterodynePrepareStage>(stage);
  require(state.n_modes() == 1, "circuit: heterodyne stage requires a single live mode");
  return apply_channel(state, heterodyne_prepare_channel(het.copies, het.scale, het.conjugate));
}

std::vector<int> range_vec(int from, int to) {  // [from, to)
  std::vector<int> v(static_cast<size_t>(to - from));
  std::iota(v.begin(), v.end(), from);
  return v;
}

// Shared report assembly: per-copy stats, bound comparison, correlations.
BroadcastReport make_report(int n, int m, complexd alpha_in, double gamma_in,
                            double bound, GaussianState output,
                            complexd expected_amplitude) {
  BroadcastReport report{.n = n,
                         .m = m,
                         .alpha_in = alpha_in,
                         .gamma_in = gamma_in,
                         .per_copy_amplitude = {},
                         .gamma_out = 0.0,
                         .bound = bound,
                         .saturated = false,
                         .superbroadcast = false,
                         .correlations = CMat(),
                         .output_nbar = 0.0,
                         .output_state = std::move(output)};
  const int copies = report.output_state.n_modes();
  double noise_min = 0.0;
  double noise_max = 0.0;
  for (int i = 0; i < copies; ++i) {
    const ModeStats stats = mode_stats(report.output_state, i);
    report.per_copy_amplitude.push_back(stats.amplitude);
    if (i == 0) {
      noise_min = noise_max = stats.noise_sum;
    } else {
      noise_min = std::min(noise_min, stats.noise_sum);
      noise_max = std::max(noise_max, stats.noise_sum);
    }
    if (std::abs(stats.amplitude - expected_amplitude) > kStructuralTol ||
        std::abs(stats.amplitude - report.per_copy_amplitude.front()) > kStructuralTol)
      throw std::logic_error("circuit output breaks amplitude covariance");
  }
  if (noise_max - noise_min > kStructuralTol)
    throw std::logic_error("circuit output breaks permutation invariance");
  report.gamma_out = mode_stats(report.output_state, 0).noise_sum;
  report.output_nbar = report.gamma_out - 0.5;
  report.saturated = std::abs(report.gamma_out - bound) <= kStructuralTol;
  report.superbroadcast = report.gamma_out < report.gamma_in - kThresholdGuard;
  report.correlations = pairwise_number_correlations(report.output_state);
  return report;
}

}  // namespace

GaussianChannel heterodyne_prepare_channel(int copies, double scale, bool conjugate) {
  require(copies >= 1, "heterodyne_prepare_channel: need at least one copy");
  require(scale > 0.0, "heterodyne_prepare_channel: scale must be positive");
  Mat t(2, 2);
  t << scale, 0.0, 0.0, conjugate ? -scale : scale;
  Mat x(2 * copies, 2);
  Mat y = 0.25 * Mat::Identity(2 * copies, 2 * copies);
  for (int k = 0; k < copies; ++k) {
    x.block<2, 2>(2 * k, 0) = t;
    for (int l = 0; l < copies; ++l)
      y.block<2, 2>(2 * k, 2 * l) += (scale * scale / 4.0) * Mat::Identity(2, 2);
  }
  return GaussianChannel(std::move(x), std::move(y));
}

CircuitSpec build_broadcast_circuit(int n, int m) {
  require(n >= 1, "build_broadcast_circuit: N must be >= 1");
  require(m >= n, "build_broadcast_circuit: M must be >= N");
  CircuitSpec spec{.n_in = n, .n_out = m, .stages = {}};
  if (n > 1) {
    spec.stages.push_back(MultisplitStage{.n = n, .inverse = false});
    spec.stages.push_back(DiscardStage{.modes = range_vec(1, n)});
  }
  spec.stages.push_back(AmplifyStage{.gain = static_cast<double>(m) / n,
                                     .kind = AmplifierKind::PhasePreserving,
                                     .mode = 0});
  if (m > 1) {
    spec.stages.push_back(AddVacuumStage{.count = m - 1});
    spec.stages.push_back(MultisplitStage{.n = m, .inverse = true});
  }
  return spec;
}

CircuitSpec build_purify_circuit(int n, int m) {
  require(n >= 1, "build_purify_circuit: N must be >= 1");
  require(m >= 1 && m <= n, "build_purify_circuit: M must satisfy 1 <= M <= N");
  CircuitSpec spec{.n_in = n, .n_out = m, .stages = {}};
  if (n > 1) {
    spec.stages.push_back(MultisplitStage{.n = n, .inverse = false});
    spec.stages.push_back(DiscardStage{.modes = range_vec(1, n)});
    // Redistribute over the full N ports so each copy regains amplitude
    // alpha; only the first M ports are kept.
    spec.stages.push_back(AddVacuumStage{.count = n - 1});
    spec.stages.push_back(MultisplitStage{.n = n, .inverse = true});
    if (m < n) spec.stages.push_back(DiscardStage{.modes = range_vec(m, n)});
  }
  return spec;
}

CircuitSpec build_phase_conjugate_circuit(int n, int m) {
  require(n >= 1, "build_phase_conjugate_circuit: N must be >= 1");
  require(m >= 1, "build_phase_conjugate_circuit: M must be >= 1");
  CircuitSpec spec{.n_in = n, .n_out = m, .stages = {}};
  if (n > 1) {
    spec.stages.push_back(MultisplitStage{.n = n, .inverse = false});
    spec.stages.push_back(DiscardStage{.modes = range_vec(1, n)});
  }
  spec.stages.push_back(HeterodynePrepareStage{
      .copies = m, .scale = 1.0 / std::sqrt(static_cast<double>(n)), .conjugate = true});
  return spec;
}

GaussianState run_circuit(const GaussianState& input, const CircuitSpec& circuit) {
  require(input.n_modes() == circuit.n_in, "run_circuit: input mode count mismatch");
  GaussianState state = input;
  for (const CircuitStage& stage : circuit.stages) state = apply_stage(state, stage);
  require(state.n_modes() == circuit.n_out, "run_circuit: output mode count mismatch");
  return state;
}

std::vector<GaussianState> run_circuit_trace(const GaussianState& input,
                                             const CircuitSpec& circuit) {
  require(input.n_modes() == circuit.n_in, "run_circuit_trace: input mode count mismatch");
  std::vector<GaussianState> trace;
  trace.push_back(input);
  for (const CircuitStage& stage : circuit.stages)
    trace.push_back(apply_stage(trace.back(), stage));
  return trace;
}

BroadcastReport run_broadcast(int n, int m, double nbar_in, complexd alpha) {
  const GaussianState single = displaced_thermal(nbar_in, alpha);
  std::vector<GaussianState> inputs(static_cast<size_t>(n), single);
  return run_broadcast_state(tensor_product(inputs), m);
}

BroadcastReport run_broadcast_state(const GaussianState& input, int m) {
  const int n = input.n_modes();
  require(m >= n, "run_broadcast_state: M must be >= N");

  const ModeStats first = mode_stats(input, 0);
  double gamma_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const ModeStats stats = mode_stats(input, i);
    require(std::abs(stats.amplitude - first.amplitude) <= kStructuralTol,
            "run_broadcast_state: input amplitudes must be equal");
    gamma_sum += stats.noise_sum;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      require(input.cov().block<2, 2>(2 * i, 2 * j).cwiseAbs().maxCoeff() <= kStructuralTol,
              "run_broadcast_state: input must be a product state");
    }
  }
  const double gamma_in = gamma_sum / n;
  GaussianState output = run_circuit(input, build_broadcast_circuit(n, m));
  return make_report(n, m, first.amplitude, gamma_in, broadcast_bound(gamma_in, n, m),
                     std::move(output), first.amplitude);
}

BroadcastReport run_purify(int n, int m, double nbar_in, complexd alpha) {
  const GaussianState single = displaced_thermal(nbar_in, alpha);
  std::vector<GaussianState> inputs(static_cast<size_t>(n), single);
  const double gamma_in = nbar_in + 0.5;
  GaussianState output = run_circuit(tensor_product(inputs), build_purify_circuit(n, m));
  return make_report(n, m, alpha, gamma_in, purification_bound(gamma_in, n),
                     std::move(output), alpha);
}

BroadcastReport run_phase_conjugate(int n, int m, double nbar_in, complexd alpha) {
  const GaussianState single = displaced_thermal(nbar_in, alpha);
  std::vector<GaussianState> inputs(static_cast<size_t>(n), single);
  const double gamma_in = nbar_in + 0.5;
  GaussianState output =
      run_circuit(tensor_product(inputs), build_phase_conjugate_circuit(n, m));
  return make_report(n, m, alpha, gamma_in, phase_conj_bound(gamma_in, n),
                     std::move(output), std::conj(alpha));
}

GaussianState predicted_output_state(int n, int m, double nbar_in, complexd alpha) {
  require(n >= 1, "predicted_output_state: N must be >= 1");
  require(m >= n, "predicted_output_state: M must be >= N");
  require(nbar_in >= 0.0, "predicted_output_state: nbar must be nonnegative");
  const double nbar_prime = m * (nbar_in + 1.0) / n - 1.0;
  const double shared = nbar_prime / (2.0 * m);
  Vec mean(2 * m);
  Mat cov = Mat::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    mean(2 * k) = alpha.real();
    mean(2 * k + 1) = alpha.imag();
    for (int l = 0; l < m; ++l)
      cov.block<2, 2>(2 * k, 2 * l) =
          (shared + (k == l ? 0.25 : 0.0)) * Mat::Identity(2, 2);
  }
  return GaussianState(std::move(mean), std::move(cov));
}

}  // namespace cvb
