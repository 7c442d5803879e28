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

#include "cvb/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "cvb/circuits.hpp"

namespace cvb {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

long pow_dim(int cutoff, int n_modes) {
  long dim = 1;
  for (int i = 0; i < n_modes; ++i) {
    dim *= cutoff;
    if (dim > kMaxFockDim) {
      std::ostringstream msg;
      msg << "Fock dimension " << cutoff << "^" << n_modes << " exceeds the cap "
          << kMaxFockDim << "; lower the cutoff or the mode count";
      throw ResourceGuardError(msg.str());
    }
  }
  return dim;
}

/// Thermal-equivalent tail mass above the cutoff for a mode of mean
/// occupation occ: (occ/(occ+1))^D.
double tail_mass(double occ, int cutoff) {
  if (occ <= 0.0) return 0.0;
  return std::pow(occ / (occ + 1.0), cutoff);
}

/// Mean photon number per mode of a Gaussian state (coherent part included).
std::vector<double> mode_occupations(const GaussianState& state) {
  std::vector<double> occ(static_cast<size_t>(state.n_modes()));
  for (int i = 0; i < state.n_modes(); ++i) {
    const ModeStats s = mode_stats(state, i);
    occ[static_cast<size_t>(i)] = s.nbar_eff + std::norm(s.amplitude);
  }
  return occ;
}

struct OccupationBudget {
  double max_occupation = 0.0;
  double tail_budget = 0.0;
};

OccupationBudget budget_from_traces(const std::vector<GaussianState>& traces, int cutoff,
                                    std::span<const double> extra_occupations) {
  OccupationBudget budget;
  for (const GaussianState& state : traces) {
    for (double occ : mode_occupations(state)) {
      budget.max_occupation = std::max(budget.max_occupation, occ);
      budget.tail_budget += tail_mass(occ, cutoff);
    }
  }
  for (double occ : extra_occupations) {
    budget.max_occupation = std::max(budget.max_occupation, occ);
    budget.tail_budget += tail_mass(occ, cutoff);
  }
  return budget;
}

void check_occupation_guard(const OccupationBudget& budget, int cutoff) {
  const double limit = cutoff / kOccupationFraction;
  if (budget.max_occupation > limit) {
    std::ostringstream msg;
    msg << "predicted mean occupation " << budget.max_occupation
        << " exceeds cutoff/" << kOccupationFraction << " = " << limit
        << "; increase --cutoff (need > " << kOccupationFraction * budget.max_occupation
        << ")";
    throw ResourceGuardError(msg.str());
  }
}

/// Coherent state |beta> truncated to the cutoff (norm < 1 for large |beta|).
CVec coherent_ket(complexd beta, int cutoff) {
  CVec ket(cutoff);
  ket(0) = std::exp(-0.5 * std::norm(beta));
  for (int k = 1; k < cutoff; ++k) ket(k) = ket(k - 1) * beta / std::sqrt(double(k));
  return ket;
}

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

CMat matrix_sqrt_psd(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitize(m));
  Vec vals = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
}

/// Digit strides for the lexicographic multi-index (mode 0 most significant).
std::vector<long> mode_strides(int n_modes, int cutoff) {
  std::vector<long> strides(static_cast<size_t>(n_modes));
  long s = 1;
  for (int q = n_modes - 1; q >= 0; --q) {
    strides[static_cast<size_t>(q)] = s;
    s *= cutoff;
  }
  return strides;
}

/// Offsets of every sub-index combination over the given modes: digit t of
/// the sub-index addresses modes[t], with digit 0 most significant.
std::vector<long> subindex_offsets(std::span<const int> modes, int n_modes, int cutoff) {
  const std::vector<long> strides = mode_strides(n_modes, cutoff);
  const int k = static_cast<int>(modes.size());
  long dsub = 1;
  for (int i = 0; i < k; ++i) dsub *= cutoff;
  std::vector<long> offsets(static_cast<size_t>(dsub), 0);
  for (long s = 0; s < dsub; ++s) {
    long rem = s;
    for (int t = k - 1; t >= 0; --t) {
      const long digit = rem % cutoff;
      rem /= cutoff;
      offsets[static_cast<size_t>(s)] += digit * strides[static_cast<size_t>(modes[t])];
    }
  }
  return offsets;
}

std::vector<int> complement_modes(std::span<const int> modes, int n_modes) {
  std::vector<int> rest;
  for (int q = 0; q < n_modes; ++q) {
    bool hit = false;
    for (int t : modes) hit = hit || (t == q);
    if (!hit) rest.push_back(q);
  }
  return rest;
}

FockUnitary make_unitary(FockUnitary::Label label, int n_modes, int cutoff, bool risk,
                         CMat matrix) {
  FockUnitary u;
  u.label = label;
  u.n_modes = n_modes;
  u.cutoff = cutoff;
  u.truncation_risk = risk;
  u.matrix = std::move(matrix);
  return u;
}

}  // namespace

CMat ladder_matrix(int cutoff) {
  require(cutoff >= 2, "ladder_matrix: cutoff must be >= 2");
  CMat a = CMat::Zero(cutoff, cutoff);
  for (int k = 0; k + 1 < cutoff; ++k) a(k, k + 1) = std::sqrt(double(k + 1));
  return a;
}

FockDensity thermal_fock(double nbar, int cutoff) {
  require(nbar >= 0.0, "thermal_fock: nbar must be nonnegative");
  require(cutoff >= 2, "thermal_fock: cutoff must be >= 2");
  pow_dim(cutoff, 1);
  FockDensity state{.n_modes = 1, .cutoff = cutoff, .rho = CMat::Zero(cutoff, cutoff)};
  if (nbar == 0.0) {
    state.rho(0, 0) = 1.0;
    return state;
  }
  const double q = nbar / (nbar + 1.0);
  double p = 1.0 / (nbar + 1.0);
  for (int k = 0; k < cutoff; ++k) {
    state.rho(k, k) = p;
    p *= q;
  }
  return state;
}

FockDensity displaced_thermal_fock(double nbar, complexd alpha, int cutoff) {
  FockDensity state = thermal_fock(nbar, cutoff);
  if (alpha == complexd(0.0, 0.0)) return state;
  const FockUnitary d = displacement_fock(alpha, cutoff);
  state.rho = d.matrix * state.rho * d.matrix.adjoint();
  return state;
}

FockUnitary displacement_fock(complexd alpha, int cutoff) {
  require(cutoff >= 2, "displacement_fock: cutoff must be >= 2");
  const CMat a = ladder_matrix(cutoff);
  CMat gen = alpha * a.adjoint() - std::conj(alpha) * a;
  const bool risk = std::norm(alpha) > cutoff / kOccupationFraction;
  return make_unitary(FockUnitary::Label::Displacement, 1, cutoff, risk, gen.exp());
}

FockUnitary beam_splitter_fock(double theta, int cutoff) {
  require(cutoff >= 2, "beam_splitter_fock: cutoff must be >= 2");
  pow_dim(cutoff, 2);
  const CMat a = ladder_matrix(cutoff);
  const CMat eye = CMat::Identity(cutoff, cutoff);
  const CMat big_a = Eigen::kroneckerProduct(a, eye);
  const CMat big_b = Eigen::kroneckerProduct(eye, a);
  CMat gen = theta * (big_a.adjoint() * big_b - big_a * big_b.adjoint());
  return make_unitary(FockUnitary::Label::BeamSplitter, 2, cutoff, false, gen.exp());
}

FockUnitary squeezer_fock(double r, int cutoff) {
  require(cutoff >= 2, "squeezer_fock: cutoff must be >= 2");
  pow_dim(cutoff, 2);
  const CMat a = ladder_matrix(cutoff);
  const CMat eye = CMat::Identity(cutoff, cutoff);
  const CMat big_a = Eigen::kroneckerProduct(a, eye);
  const CMat big_b = Eigen::kroneckerProduct(eye, a);
  CMat gen = r * (big_a.adjoint() * big_b.adjoint() - big_a * big_b);
  const double pumped = std::sinh(r) * std::sinh(r);
  const bool risk = pumped > cutoff / kOccupationFraction;
  return make_unitary(FockUnitary::Label::Squeezer, 2, cutoff, risk, gen.exp());
}

FockDensity tensor_fock(const FockDensity& a, const FockDensity& b) {
  require(a.cutoff == b.cutoff, "tensor_fock: cutoff mismatch");
  pow_dim(a.cutoff, a.n_modes + b.n_modes);
  FockDensity out{.n_modes = a.n_modes + b.n_modes, .cutoff = a.cutoff, .rho = CMat()};
  out.rho = Eigen::kroneckerProduct(a.rho, b.rho);
  return out;
}

FockDensity apply_fock_unitary(const FockDensity& state, const FockUnitary& unitary,
                               std::span<const int> targets) {
  require(unitary.cutoff == state.cutoff, "apply_fock_unitary: cutoff mismatch");
  require(static_cast<int>(targets.size()) == unitary.n_modes,
          "apply_fock_unitary: target count does not match unitary width");
  for (int t : targets)
    require(t >= 0 && t < state.n_modes, "apply_fock_unitary: target mode out of range");
  for (size_t i = 0; i < targets.size(); ++i)
    for (size_t j = i + 1; j < targets.size(); ++j)
      require(targets[i] != targets[j], "apply_fock_unitary: duplicate target mode");

  FockDensity out{.n_modes = state.n_modes, .cutoff = state.cutoff, .rho = CMat()};
  if (static_cast<int>(targets.size()) == state.n_modes) {
    bool natural = true;
    for (size_t i = 0; i < targets.size(); ++i) natural = natural && targets[i] == int(i);
    if (natural) {
      out.rho = unitary.matrix * state.rho * unitary.matrix.adjoint();
      return out;
    }
  }

  const long dim = state.rho.rows();
  const std::vector<long> sub = subindex_offsets(targets, state.n_modes, state.cutoff);
  const std::vector<int> rest_modes = complement_modes(targets, state.n_modes);
  const std::vector<long> rest = subindex_offsets(rest_modes, state.n_modes, state.cutoff);

  CMat full = CMat::Zero(dim, dim);
  for (size_t si = 0; si < sub.size(); ++si)
    for (size_t sj = 0; sj < sub.size(); ++sj) {
      const complexd v = unitary.matrix(static_cast<long>(si), static_cast<long>(sj));
      if (v == complexd(0.0, 0.0)) continue;
      for (long r : rest) full(sub[si] + r, sub[sj] + r) = v;
    }
  out.rho = full * state.rho * full.adjoint();
  return out;
}

FockDensity reduced(const FockDensity& state, std::span<const int> keep) {
  require(!keep.empty(), "reduced: must keep at least one mode");
  for (int t : keep)
    require(t >= 0 && t < state.n_modes, "reduced: mode index out of range");
  for (size_t i = 0; i < keep.size(); ++i)
    for (size_t j = i + 1; j < keep.size(); ++j)
      require(keep[i] != keep[j], "reduced: duplicate mode index");

  const std::vector<long> sub = subindex_offsets(keep, state.n_modes, state.cutoff);
  const std::vector<int> rest_modes = complement_modes(keep, state.n_modes);
  const std::vector<long> rest = subindex_offsets(rest_modes, state.n_modes, state.cutoff);

  FockDensity out{.n_modes = static_cast<int>(keep.size()),
                  .cutoff = state.cutoff,
                  .rho = CMat::Zero(static_cast<long>(sub.size()),
                                    static_cast<long>(sub.size()))};
  for (size_t si = 0; si < sub.size(); ++si)
    for (size_t sj = 0; sj < sub.size(); ++sj) {
      complexd acc(0.0, 0.0);
      for (long r : rest) acc += state.rho(sub[si] + r, sub[sj] + r);
      out.rho(static_cast<long>(si), static_cast<long>(sj)) = acc;
    }
  return out;
}

ModeStats fock_mode_stats(const FockDensity& state, int mode) {
  require(mode >= 0 && mode < state.n_modes, "fock_mode_stats: mode index out of range");
  const int keep[] = {mode};
  const FockDensity one = state.n_modes == 1 ? state : reduced(state, keep);
  const CMat a = ladder_matrix(state.cutoff);
  const double trace = one.rho.trace().real();
  require(trace > 0.0, "fock_mode_stats: state has nonpositive trace");
  ModeStats stats;
  stats.amplitude = (a * one.rho).trace() / trace;
  const double photons = (a.adjoint() * a * one.rho).trace().real() / trace;
  stats.nbar_eff = photons - std::norm(stats.amplitude);
  stats.noise_sum = 0.5 + stats.nbar_eff;
  return stats;
}

double fidelity(const FockDensity& rho, const FockDensity& sigma) {
  require(rho.rho.rows() == sigma.rho.rows(), "fidelity: dimension mismatch");
  const double tr = rho.rho.trace().real();
  const double ts = sigma.rho.trace().real();
  require(tr > 0.0 && ts > 0.0, "fidelity: states must have positive trace");
  const CMat root = matrix_sqrt_psd(rho.rho / tr);
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitize(root * (sigma.rho / ts) * root),
                                             Eigen::EigenvaluesOnly);
  const double sum = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::min(1.0, sum * sum);
}

namespace {

/// Concentration cascade: after BS(0,k; atan2(1, sqrt(k))) for k = 1..n-1,
/// mode 0 carries (1/sqrt(n)) sum a_i.
FockDensity concentrate(FockDensity state, int n, int cutoff) {
  for (int k = 1; k < n; ++k) {
    const FockUnitary bs =
        beam_splitter_fock(std::atan2(1.0, std::sqrt(double(k))), cutoff);
    const int targets[] = {0, k};
    state = apply_fock_unitary(state, bs, targets);
  }
  const int keep[] = {0};
  return n > 1 ? reduced(state, keep) : state;
}

/// Distribution cascade over `copies` ports: mode 0 in, equal positive
/// amplitudes 1/sqrt(copies) out.
FockDensity distribute(FockDensity state, int copies, int cutoff) {
  for (int k = 1; k < copies; ++k) {
    const FockUnitary bs = beam_splitter_fock(
        -std::asin(1.0 / std::sqrt(double(copies - k + 1))), cutoff);
    const int targets[] = {0, k};
    state = apply_fock_unitary(state, bs, targets);
  }
  return state;
}

FockDensity tensor_inputs(double nbar, complexd alpha, int n, int cutoff) {
  const FockDensity single = displaced_thermal_fock(nbar, alpha, cutoff);
  FockDensity state = single;
  for (int i = 1; i < n; ++i) state = tensor_fock(state, single);
  return state;
}

OracleReport finalize_density_report(OracleReport report, const FockDensity& output,
                                     const FockDensity& predicted_copy, int copies) {
  report.trace_deficit = output.trace_deficit();
  for (int k = 0; k < copies; ++k) {
    const int keep[] = {k};
    FockDensity copy = output.n_modes == 1 ? output : reduced(output, keep);
    const ModeStats stats = fock_mode_stats(copy, 0);
    OracleCopy entry;
    entry.amplitude = stats.amplitude;
    entry.noise_sum = stats.noise_sum;
    entry.nbar_eff = stats.nbar_eff;
    entry.fidelity_to_predicted = fidelity(copy, predicted_copy);
    report.copies.push_back(entry);
    report.copy_states.push_back(std::move(copy));
  }
  return report;
}

}  // namespace

OracleReport oracle_broadcast(int n, int m, double nbar, complexd alpha, int cutoff) {
  require(n >= 1 && n <= 2, "oracle_broadcast: N must be 1 or 2");
  require(m >= n && m <= 3, "oracle_broadcast: M must satisfy N <= M <= 3");
  require(nbar >= 0.0, "oracle_broadcast: nbar must be nonnegative");
  require(cutoff >= 2, "oracle_broadcast: cutoff must be >= 2");
  pow_dim(cutoff, std::max({n, 2, m}));

  const BroadcastReport gaussian = run_broadcast(n, m, nbar, alpha);
  const double gain = double(m) / n;

  // Stage-level occupation predictions from the Gaussian lane, plus the
  // squeezer idler which the circuit trace does not show.
  const GaussianState input = [&] {
    std::vector<GaussianState> singles(static_cast<size_t>(n),
                                       displaced_thermal(nbar, alpha));
    return tensor_product(singles);
  }();
  std::vector<double> extra;
  if (m > n)
    extra.push_back((gain - 1.0) * (nbar + double(n) * std::norm(alpha) + 1.0));
  const OccupationBudget budget = budget_from_traces(
      run_circuit_trace(input, build_broadcast_circuit(n, m)), cutoff, extra);
  check_occupation_guard(budget, cutoff);

  OracleReport report;
  report.n = n;
  report.m = m;
  report.nbar_in = nbar;
  report.alpha = alpha;
  report.cutoff = cutoff;
  report.predicted_tail_budget = budget.tail_budget;
  report.max_predicted_occupation = budget.max_occupation;
  report.expected_amplitude = gaussian.per_copy_amplitude.front();
  report.expected_noise_sum = gaussian.gamma_out;

  FockDensity state = concentrate(tensor_inputs(nbar, alpha, n, cutoff), n, cutoff);
  if (m > n) {
    state = tensor_fock(state, thermal_fock(0.0, cutoff));
    const FockUnitary sq = squeezer_fock(std::acosh(std::sqrt(gain)), cutoff);
    const int targets[] = {0, 1};
    state = apply_fock_unitary(state, sq, targets);
    const int keep[] = {0};
    state = reduced(state, keep);
  }
  for (int k = 1; k < m; ++k) state = tensor_fock(state, thermal_fock(0.0, cutoff));
  state = distribute(std::move(state), m, cutoff);

  const FockDensity predicted =
      displaced_thermal_fock(gaussian.output_nbar, report.expected_amplitude, cutoff);
  return finalize_density_report(std::move(report), state, predicted, m);
}

OracleReport oracle_purify(int n, int m, double nbar, complexd alpha, int cutoff) {
  require(n >= 1 && n <= 3, "oracle_purify: N must be between 1 and 3");
  require(m >= 1 && m <= 2 && m <= n, "oracle_purify: M must satisfy 1 <= M <= min(N, 2)");
  require(nbar >= 0.0, "oracle_purify: nbar must be nonnegative");
  require(cutoff >= 2, "oracle_purify: cutoff must be >= 2");
  pow_dim(cutoff, std::max(n, 2));

  const BroadcastReport gaussian = run_purify(n, m, nbar, alpha);
  const GaussianState input = [&] {
    std::vector<GaussianState> singles(static_cast<size_t>(n),
                                       displaced_thermal(nbar, alpha));
    return tensor_product(singles);
  }();
  const OccupationBudget budget =
      budget_from_traces(run_circuit_trace(input, build_purify_circuit(n, m)), cutoff, {});
  check_occupation_guard(budget, cutoff);

  OracleReport report;
  report.n = n;
  report.m = m;
  report.nbar_in = nbar;
  report.alpha = alpha;
  report.cutoff = cutoff;
  report.predicted_tail_budget = budget.tail_budget;
  report.max_predicted_occupation = budget.max_occupation;
  report.expected_amplitude = gaussian.per_copy_amplitude.front();
  report.expected_noise_sum = gaussian.gamma_out;

  FockDensity state = concentrate(tensor_inputs(nbar, alpha, n, cutoff), n, cutoff);
  // Redistribute over the full N ports (amplitude returns to alpha on each),
  // then report the first M copies.
  for (int k = 1; k < n; ++k) state = tensor_fock(state, thermal_fock(0.0, cutoff));
  state = distribute(std::move(state), n, cutoff);

  const FockDensity predicted =
      displaced_thermal_fock(gaussian.output_nbar, report.expected_amplitude, cutoff);
  return finalize_density_report(std::move(report), state, predicted, m);
}

OracleReport oracle_phase_conjugate(int n, int m, double nbar, complexd alpha, int cutoff,
                                    long samples, std::uint64_t seed) {
  require(n >= 1 && n <= 2, "oracle_phase_conjugate: N must be 1 or 2");
  require(m >= 1 && m <= 2, "oracle_phase_conjugate: M must be 1 or 2");
  require(nbar >= 0.0, "oracle_phase_conjugate: nbar must be nonnegative");
  require(cutoff >= 2, "oracle_phase_conjugate: cutoff must be >= 2");
  require(samples >= 10000,
          "oracle_phase_conjugate: need at least 10^4 samples for the target tolerance");

  const BroadcastReport gaussian = run_phase_conjugate(n, m, nbar, alpha);
  const double gamma_in = nbar + 0.5;
  const double occ = (gaussian.gamma_out - 0.5) + std::norm(alpha);
  OccupationBudget budget{.max_occupation = occ, .tail_budget = tail_mass(occ, cutoff)};
  check_occupation_guard(budget, cutoff);

  OracleReport report;
  report.n = n;
  report.m = m;
  report.nbar_in = nbar;
  report.alpha = alpha;
  report.cutoff = cutoff;
  report.samples = samples;
  report.predicted_tail_budget = budget.tail_budget;
  report.max_predicted_occupation = budget.max_occupation;
  report.expected_amplitude = gaussian.per_copy_amplitude.front();
  report.expected_noise_sum = gaussian.gamma_out;

  // Husimi Q of the concentrated mode: complex Gaussian, mean sqrt(N) alpha,
  // per-quadrature variance gamma/2 + 1/4.
  const double mean_x = std::sqrt(double(n)) * alpha.real();
  const double mean_y = std::sqrt(double(n)) * alpha.imag();
  const double sigma = std::sqrt(gamma_in / 2.0 + 0.25);
  const double scale = 1.0 / std::sqrt(double(n));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  complexd sum(0.0, 0.0);
  double sum_abs2 = 0.0;
  CMat accumulated = CMat::Zero(cutoff, cutoff);
  for (long s = 0; s < samples; ++s) {
    const complexd outcome(mean_x + sigma * gauss(rng), mean_y + sigma * gauss(rng));
    const complexd prepared = std::conj(outcome) * scale;
    sum += prepared;
    sum_abs2 += std::norm(prepared);
    const CVec ket = coherent_ket(prepared, cutoff);
    accumulated.noalias() += ket * ket.adjoint();
  }

  FockDensity copy{.n_modes = 1, .cutoff = cutoff, .rho = accumulated / double(samples)};
  report.trace_deficit = copy.trace_deficit();

  OracleCopy entry;
  entry.amplitude = sum / double(samples);
  entry.nbar_eff = sum_abs2 / double(samples) - std::norm(entry.amplitude);
  entry.noise_sum = 0.5 + entry.nbar_eff;
  const FockDensity predicted = displaced_thermal_fock(
      gaussian.output_nbar, report.expected_amplitude, cutoff);
  entry.fidelity_to_predicted = fidelity(copy, predicted);
  // All copies carry the same prepared state; the marginals are identical.
  for (int k = 0; k < m; ++k) {
    report.copies.push_back(entry);
    report.copy_states.push_back(copy);
  }
  return report;
}

}  // namespace cvb
