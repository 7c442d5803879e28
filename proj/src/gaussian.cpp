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

#include "cvb/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cvb {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

/// Smallest eigenvalue of the Hermitian matrix H + (i c) A, with H real
/// symmetric and A real antisymmetric.
double min_eigenvalue(const Mat& sym, const Mat& antisym, double c) {
  CMat h = sym.cast<complexd>() + complexd(0.0, c) * antisym.cast<complexd>();
  Eigen::SelfAdjointEigenSolver<CMat> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

Mat symplectic_form(int n_modes) {
  require(n_modes >= 0, "symplectic_form: negative mode count");
  Mat omega = Mat::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Mat realify(const CMat& u) {
  Mat s(2 * u.rows(), 2 * u.cols());
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      const double p = u(r, c).real();
      const double q = u(r, c).imag();
      s(2 * r, 2 * c) = p;
      s(2 * r, 2 * c + 1) = -q;
      s(2 * r + 1, 2 * c) = q;
      s(2 * r + 1, 2 * c + 1) = p;
    }
  }
  return s;
}

GaussianState::GaussianState(Vec mean, Mat cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  require(mean_.size() >= 2 && mean_.size() % 2 == 0,
          "GaussianState: mean length must be a positive even number");
  require(cov_.rows() == mean_.size() && cov_.cols() == mean_.size(),
          "GaussianState: covariance size does not match mean");
  require(max_abs(cov_ - cov_.transpose()) <= kSymmetryTol,
          "GaussianState: covariance is not symmetric");
  const Mat omega = symplectic_form(n_modes());
  require(min_eigenvalue(cov_, omega, 0.25) >= -kStructuralTol,
          "GaussianState: covariance violates the uncertainty relation");
}

GaussianState GaussianState::vacuum(int n_modes) {
  require(n_modes >= 1, "vacuum: need at least one mode");
  return GaussianState(Vec::Zero(2 * n_modes),
                       0.25 * Mat::Identity(2 * n_modes, 2 * n_modes));
}

SymplecticMap::SymplecticMap(Mat matrix, Vec displacement)
    : matrix_(std::move(matrix)), displacement_(std::move(displacement)) {
  validate();
}

SymplecticMap::SymplecticMap(Mat matrix)
    : matrix_(std::move(matrix)), displacement_(Vec::Zero(matrix_.rows())) {
  validate();
}

void SymplecticMap::validate() const {
  require(matrix_.rows() == matrix_.cols() && matrix_.rows() % 2 == 0,
          "SymplecticMap: matrix must be square with even dimension");
  require(displacement_.size() == matrix_.rows(),
          "SymplecticMap: displacement size does not match matrix");
  const Mat omega = symplectic_form(n_modes());
  require(max_abs(matrix_ * omega * matrix_.transpose() - omega) <= kStructuralTol,
          "SymplecticMap: matrix does not preserve the symplectic form");
}

SymplecticMap SymplecticMap::identity(int n_modes) {
  require(n_modes >= 1, "SymplecticMap::identity: need at least one mode");
  return SymplecticMap(Mat::Identity(2 * n_modes, 2 * n_modes),
                       Vec::Zero(2 * n_modes));
}

SymplecticMap SymplecticMap::inverse() const {
  const Mat omega = symplectic_form(n_modes());
  Mat inv = -omega * matrix_.transpose() * omega;
  Vec d = -inv * displacement_;
  return SymplecticMap(std::move(inv), std::move(d));
}

GaussianChannel::GaussianChannel(Mat X, Mat Y, Vec d)
    : X_(std::move(X)), Y_(std::move(Y)), d_(std::move(d)) {
  validate();
}

GaussianChannel::GaussianChannel(Mat X, Mat Y)
    : X_(std::move(X)), Y_(std::move(Y)), d_(Vec::Zero(Y_.rows())) {
  validate();
}

void GaussianChannel::validate() const {
  require(X_.rows() % 2 == 0 && X_.cols() % 2 == 0,
          "GaussianChannel: X must have even dimensions");
  require(Y_.rows() == X_.rows() && Y_.cols() == X_.rows(),
          "GaussianChannel: Y size does not match X output dimension");
  require(d_.size() == X_.rows(),
          "GaussianChannel: displacement size does not match X output dimension");
  require(max_abs(Y_ - Y_.transpose()) <= kSymmetryTol,
          "GaussianChannel: Y is not symmetric");
  const Mat omega_out = symplectic_form(out_modes());
  const Mat omega_in = symplectic_form(in_modes());
  const Mat antisym = omega_out - X_ * omega_in * X_.transpose();
  require(min_eigenvalue(Y_, antisym, 0.25) >= -kStructuralTol,
          "GaussianChannel: violates complete positivity");
}

GaussianState displaced_thermal(double nbar, complexd alpha) {
  require(nbar >= 0.0, "displaced_thermal: nbar must be nonnegative");
  Vec mean(2);
  mean << alpha.real(), alpha.imag();
  Mat cov = (nbar / 2.0 + 0.25) * Mat::Identity(2, 2);
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState tensor_product(std::span<const GaussianState> states) {
  require(!states.empty(), "tensor_product: empty state list");
  int total = 0;
  for (const auto& s : states) total += s.n_modes();
  Vec mean = Vec::Zero(2 * total);
  Mat cov = Mat::Zero(2 * total, 2 * total);
  int offset = 0;
  for (const auto& s : states) {
    const int w = 2 * s.n_modes();
    mean.segment(offset, w) = s.mean();
    cov.block(offset, offset, w, w) = s.cov();
    offset += w;
  }
  return GaussianState(std::move(mean), std::move(cov));
}

SymplecticMap multisplitter(int n) {
  require(n >= 1, "multisplitter: n must be >= 1");
  CMat f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const double phase =
          2.0 * std::numbers::pi * static_cast<double>(k) * static_cast<double>(l) / n;
      f(k, l) = norm * std::polar(1.0, phase);
    }
  }
  return SymplecticMap(realify(f), Vec::Zero(2 * n));
}

SymplecticMap beam_splitter(double theta, int i, int j, int n_modes) {
  require(i != j, "beam_splitter: mode indices must differ");
  require(i >= 0 && j >= 0 && i < n_modes && j < n_modes,
          "beam_splitter: mode index out of range");
  Mat s = Mat::Identity(2 * n_modes, 2 * n_modes);
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const Mat eye2 = Mat::Identity(2, 2);
  s.block<2, 2>(2 * i, 2 * i) = c * eye2;
  s.block<2, 2>(2 * i, 2 * j) = sn * eye2;
  s.block<2, 2>(2 * j, 2 * i) = -sn * eye2;
  s.block<2, 2>(2 * j, 2 * j) = c * eye2;
  return SymplecticMap(std::move(s), Vec::Zero(2 * n_modes));
}

SymplecticMap two_mode_squeezer(double r, int i, int j, int n_modes) {
  require(i != j, "two_mode_squeezer: mode indices must differ");
  require(i >= 0 && j >= 0 && i < n_modes && j < n_modes,
          "two_mode_squeezer: mode index out of range");
  const double mu = std::cosh(r);
  const double nu = std::sinh(r);
  Mat s = Mat::Identity(2 * n_modes, 2 * n_modes);
  // x_i' = mu x_i - nu x_j, y_i' = mu y_i + nu y_j, and symmetrically for j.
  Mat cross(2, 2);
  cross << -nu, 0.0, 0.0, nu;
  const Mat eye2 = Mat::Identity(2, 2);
  s.block<2, 2>(2 * i, 2 * i) = mu * eye2;
  s.block<2, 2>(2 * i, 2 * j) = cross;
  s.block<2, 2>(2 * j, 2 * i) = cross;
  s.block<2, 2>(2 * j, 2 * j) = mu * eye2;
  return SymplecticMap(std::move(s), Vec::Zero(2 * n_modes));
}

GaussianChannel amplifier_channel(double gain, AmplifierKind kind) {
  require(gain >= 1.0, "amplifier_channel: gain must be >= 1");
  const double root = std::sqrt(gain);
  Mat x(2, 2);
  Mat y(2, 2);
  if (kind == AmplifierKind::PhasePreserving) {
    x = root * Mat::Identity(2, 2);
    y = ((gain - 1.0) / 4.0) * Mat::Identity(2, 2);
  } else {
    x << root, 0.0, 0.0, -root;
    y = ((gain + 1.0) / 4.0) * Mat::Identity(2, 2);
  }
  return GaussianChannel(std::move(x), std::move(y));
}

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMap& map) {
  require(map.n_modes() == state.n_modes(),
          "apply_symplectic: mode count mismatch");
  Vec mean = map.matrix() * state.mean() + map.displacement();
  Mat cov = map.matrix() * state.cov() * map.matrix().transpose();
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState apply_channel(const GaussianState& state, const GaussianChannel& channel) {
  require(channel.in_modes() == state.n_modes(),
          "apply_channel: channel input does not match state");
  Vec mean = channel.X() * state.mean() + channel.d();
  Mat cov = channel.X() * state.cov() * channel.X().transpose() + channel.Y();
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState apply_channel(const GaussianState& state, const GaussianChannel& channel,
                            std::span<const int> targets) {
  const int n = state.n_modes();
  const int k = static_cast<int>(targets.size());
  require(channel.in_modes() == k && channel.out_modes() == k,
          "apply_channel: channel width does not match target mode count");
  for (int t : targets)
    require(t >= 0 && t < n, "apply_channel: target mode out of range");

  Mat x_full = Mat::Identity(2 * n, 2 * n);
  Mat y_full = Mat::Zero(2 * n, 2 * n);
  Vec d_full = Vec::Zero(2 * n);
  for (int a = 0; a < k; ++a) {
    x_full.block<2, 2>(2 * targets[a], 2 * targets[a]).setZero();
    d_full.segment<2>(2 * targets[a]) = channel.d().segment<2>(2 * a);
  }
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      x_full.block<2, 2>(2 * targets[a], 2 * targets[b]) = channel.X().block<2, 2>(2 * a, 2 * b);
      y_full.block<2, 2>(2 * targets[a], 2 * targets[b]) = channel.Y().block<2, 2>(2 * a, 2 * b);
    }
  }
  return apply_channel(state, GaussianChannel(std::move(x_full), std::move(y_full),
                                              std::move(d_full)));
}

GaussianState add_vacuum(const GaussianState& state, int k) {
  require(k >= 0, "add_vacuum: negative mode count");
  if (k == 0) return state;
  const int n = state.n_modes();
  Vec mean = Vec::Zero(2 * (n + k));
  mean.head(2 * n) = state.mean();
  Mat cov = 0.25 * Mat::Identity(2 * (n + k), 2 * (n + k));
  cov.topLeftCorner(2 * n, 2 * n) = state.cov();
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState partial_trace(const GaussianState& state, std::span<const int> keep) {
  const int n = state.n_modes();
  require(!keep.empty(), "partial_trace: must keep at least one mode");
  for (int m : keep)
    require(m >= 0 && m < n, "partial_trace: mode index out of range");
  const int k = static_cast<int>(keep.size());
  Vec mean(2 * k);
  Mat cov(2 * k, 2 * k);
  for (int a = 0; a < k; ++a) {
    mean.segment<2>(2 * a) = state.mean().segment<2>(2 * keep[a]);
    for (int b = 0; b < k; ++b)
      cov.block<2, 2>(2 * a, 2 * b) = state.cov().block<2, 2>(2 * keep[a], 2 * keep[b]);
  }
  return GaussianState(std::move(mean), std::move(cov));
}

ModeStats mode_stats(const GaussianState& state, int mode) {
  require(mode >= 0 && mode < state.n_modes(), "mode_stats: mode index out of range");
  ModeStats stats;
  stats.amplitude = complexd(state.mean()(2 * mode), state.mean()(2 * mode + 1));
  stats.noise_sum = state.cov()(2 * mode, 2 * mode) + state.cov()(2 * mode + 1, 2 * mode + 1);
  stats.nbar_eff = stats.noise_sum - 0.5;
  if (stats.noise_sum < 0.5 - kStructuralTol)
    throw std::invalid_argument("mode_stats: noise sum below the vacuum limit");
  return stats;
}

double total_photon_number(const GaussianState& state) {
  double total = 0.0;
  for (int i = 0; i < state.n_modes(); ++i) {
    const ModeStats s = mode_stats(state, i);
    total += s.nbar_eff + std::norm(s.amplitude);
  }
  return total;
}

CMat pairwise_number_correlations(const GaussianState& state) {
  const int n = state.n_modes();
  const Mat& cov = state.cov();
  CMat c(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = cov(2 * i, 2 * j) + cov(2 * i + 1, 2 * j + 1);
      const double im = cov(2 * i, 2 * j + 1) - cov(2 * i + 1, 2 * j);
      c(i, j) = complexd(re - (i == j ? 0.5 : 0.0), im);
    }
  }
  return c;
}

}  // namespace cvb
