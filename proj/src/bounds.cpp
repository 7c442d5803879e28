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

#include "cvb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cvb {

namespace {

void check_gamma(double gamma) {
  if (gamma < 0.5 - kSymmetryTol)
    throw std::invalid_argument("bound: gamma must be >= 1/2");
}

}  // namespace

double broadcast_bound(double gamma, int n, int m) {
  check_gamma(gamma);
  if (n < 1) throw std::invalid_argument("broadcast_bound: N must be >= 1");
  if (m < n) throw std::invalid_argument("broadcast_bound: M must be >= N");
  return 0.5 + (gamma - 0.5) / n + 1.0 / n - 1.0 / m;
}

double purification_bound(double gamma, int n) {
  check_gamma(gamma);
  if (n < 1) throw std::invalid_argument("purification_bound: N must be >= 1");
  return 0.5 + (gamma - 0.5) / n;
}

double phase_conj_bound(double gamma, int n) {
  check_gamma(gamma);
  if (n < 1) throw std::invalid_argument("phase_conj_bound: N must be >= 1");
  return 0.5 + (gamma + 0.5) / n;
}

double amplifier_bound(double input_sum, double gain, AmplifierKind kind) {
  check_gamma(input_sum);
  if (gain <= 0.0) throw std::invalid_argument("amplifier_bound: gain must be positive");
  const double added =
      kind == AmplifierKind::PhasePreserving ? std::abs(gain - 1.0) : std::abs(gain + 1.0);
  return gain * input_sum + added / 2.0;
}

double superbroadcast_threshold(int n, int m) {
  if (n < 2)
    throw std::invalid_argument("superbroadcast_threshold: requires N >= 2");
  if (m <= n)
    throw std::invalid_argument("superbroadcast_threshold: requires M > N");
  return static_cast<double>(m - n) / (static_cast<double>(m) * (n - 1));
}

double evaluate_bound(const BoundQuery& query) {
  switch (query.kind) {
    case BoundKind::Broadcast:
      return broadcast_bound(query.gamma, query.n, query.m);
    case BoundKind::Purify:
      return purification_bound(query.gamma, query.n);
    case BoundKind::PhaseConjugate:
      return phase_conj_bound(query.gamma, query.n);
    case BoundKind::Amplifier:
      return amplifier_bound(query.gamma, query.gain, query.amp_kind);
  }
  throw std::logic_error("evaluate_bound: unknown kind");
}

CauchySchwarzReport check_cauchy_schwarz(const CMat& correlations, const CVec& amplitudes,
                                         double tol) {
  const Eigen::Index n = correlations.rows();
  if (correlations.cols() != n)
    throw std::invalid_argument("check_cauchy_schwarz: correlation matrix must be square");
  if (amplitudes.size() != n)
    throw std::invalid_argument("check_cauchy_schwarz: amplitude count mismatch");
  if ((correlations - correlations.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol)
    throw std::invalid_argument("check_cauchy_schwarz: correlation matrix must be Hermitian");

  // Full second moments <b_i^dag b_j>, coherent background included.
  CMat full = correlations;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      full(i, j) += std::conj(amplitudes(i)) * amplitudes(j);

  CauchySchwarzReport report;
  report.slack = Mat::Zero(n, n);
  report.holds = true;
  report.all_saturated = n > 1;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double rhs = std::sqrt(std::max(0.0, full(i, i).real() * full(j, j).real()));
      const double lhs = std::abs(full(i, j));
      report.slack(i, j) = rhs - lhs;
      report.max_violation = std::max(report.max_violation, lhs - rhs);
      if (lhs > rhs + tol) report.holds = false;
      if (std::abs(lhs - rhs) > tol) report.all_saturated = false;
    }
  }
  if (n <= 1) report.max_violation = 0.0;
  return report;
}

}  // namespace cvb
