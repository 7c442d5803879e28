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
 * Multimode Gaussian states and the symplectic / Gaussian-channel calculus.
 *
 * Conventions (used everywhere in this project):
 *   - Quadratures x = (a + a^dag)/2, y = (a - a^dag)/(2i), so [x, y] = i/2
 *     and the vacuum variance is 1/4 per quadrature.
 *   - Mode ordering is interleaved: (x0, y0, x1, y1, ...).
 *   - The symplectic form is Omega = direct sum of [[0, 1], [-1, 0]] blocks;
 *     valid covariance matrices satisfy cov + (i/4) Omega >= 0.
 *   - A complex mode map a_k -> sum_l u_{kl} a_l is realified by sending each
 *     entry u = p + iq to the 2x2 block [[p, -q], [q, p]].
 *   - The "noise sum" of a mode is Var(x) + Var(y) = 1/2 + <a^dag a> - |<a>|^2,
 *     i.e. 1/2 plus the effective thermal photon number.
 */

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cvb {

using complexd = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Tolerances for structural invariants (1e-10) and exact symmetry (1e-12),
// sized for double precision on problems of at most ~10 modes.
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kStructuralTol = 1e-10;

/// Block-diagonal symplectic form for n modes (2n x 2n).
Mat symplectic_form(int n_modes);

/// Realification of a complex mode map: u = p + iq -> [[p, -q], [q, p]].
Mat realify(const CMat& u);

/// Gaussian state of n modes: quadrature mean vector and covariance matrix.
/// Construction validates symmetry and the uncertainty relation.
class GaussianState {
 public:
  GaussianState(Vec mean, Mat cov);

  static GaussianState vacuum(int n_modes);

  int n_modes() const { return static_cast<int>(mean_.size()) / 2; }
  const Vec& mean() const { return mean_; }
  const Mat& cov() const { return cov_; }

 private:
  Vec mean_;
  Mat cov_;
};

/// Linear mode transformation S (with optional displacement d) preserving the
/// symplectic form: S Omega S^T = Omega. Acts as mean -> S mean + d,
/// cov -> S cov S^T.
class SymplecticMap {
 public:
  SymplecticMap(Mat matrix, Vec displacement);
  explicit SymplecticMap(Mat matrix);

  static SymplecticMap identity(int n_modes);

  int n_modes() const { return static_cast<int>(matrix_.rows()) / 2; }
  const Mat& matrix() const { return matrix_; }
  const Vec& displacement() const { return displacement_; }

  /// Inverse map, computed from the symplectic identity S^-1 = -Omega S^T Omega.
  SymplecticMap inverse() const;

 private:
  void validate() const;

  Mat matrix_;
  Vec displacement_;
};

/// Gaussian channel from n to m modes: mean -> X mean + d,
/// cov -> X cov X^T + Y. Construction validates symmetry of Y and complete
/// positivity: Y + (i/4)(Omega_m - X Omega_n X^T) >= 0.
class GaussianChannel {
 public:
  GaussianChannel(Mat X, Mat Y, Vec d);
  GaussianChannel(Mat X, Mat Y);

  int in_modes() const { return static_cast<int>(X_.cols()) / 2; }
  int out_modes() const { return static_cast<int>(X_.rows()) / 2; }
  const Mat& X() const { return X_; }
  const Mat& Y() const { return Y_; }
  const Vec& d() const { return d_; }

 private:
  void validate() const;

  Mat X_;
  Mat Y_;
  Vec d_;
};

/// Single-mode first/second moment summary. noise_sum = Var(x) + Var(y);
/// nbar_eff = <a^dag a> - |<a>|^2 = noise_sum - 1/2.
struct ModeStats {
  complexd amplitude;
  double noise_sum;
  double nbar_eff;
};

enum class AmplifierKind { PhasePreserving, PhaseConjugating };

/// Displaced thermal state D(alpha) rho_nbar D^dag(alpha): mean (Re a, Im a),
/// covariance (nbar/2 + 1/4) I. Throws std::invalid_argument for nbar < 0.
GaussianState displaced_thermal(double nbar, complexd alpha);

/// Tensor product: concatenated means, block-diagonal covariance.
GaussianState tensor_product(std::span<const GaussianState> states);

/// n-mode multisplitter: realification of the unitary DFT
/// F_{kl} = exp(2 pi i k l / n)/sqrt(n) on annihilation operators. Output
/// mode 0 carries (1/sqrt(n)) sum_l a_l; the matrix is orthogonal and
/// symplectic.
SymplecticMap multisplitter(int n);

/// Beam splitter: rotation by theta in the (i, j) mode plane,
/// a_i -> cos(theta) a_i + sin(theta) a_j, a_j -> -sin(theta) a_i + cos(theta) a_j.
SymplecticMap beam_splitter(double theta, int i, int j, int n_modes);

/// Two-mode squeezer on modes (i, j): a_i^dag -> cosh(r) a_i^dag - sinh(r) a_j,
/// a_j -> cosh(r) a_j - sinh(r) a_i^dag.
SymplecticMap two_mode_squeezer(double r, int i, int j, int n_modes);

/// Quantum-limited single-mode amplifier with power gain G >= 1.
/// Phase-preserving: X = sqrt(G) I, Y = ((G-1)/4) I; output noise sum is
/// G * input + (G-1)/2. Phase-conjugating: X = sqrt(G) diag(1, -1),
/// Y = ((G+1)/4) I; output noise sum G * input + (G+1)/2.
GaussianChannel amplifier_channel(double gain, AmplifierKind kind);

GaussianState apply_symplectic(const GaussianState& state, const SymplecticMap& map);

/// Apply a channel to the whole state (channel input width must match).
GaussianState apply_channel(const GaussianState& state, const GaussianChannel& channel);

/// Apply a square channel to a subset of modes, identity elsewhere.
GaussianState apply_channel(const GaussianState& state, const GaussianChannel& channel,
                            std::span<const int> targets);

/// Append k vacuum modes.
GaussianState add_vacuum(const GaussianState& state, int k);

/// Keep the listed modes (in the listed order) and trace out the rest.
GaussianState partial_trace(const GaussianState& state, std::span<const int> keep);

ModeStats mode_stats(const GaussianState& state, int mode);

/// Sum over modes of <a_i^dag a_i>, computed from mean and covariance.
/// Invariant under passive maps (multisplitter, beam splitter).
double total_photon_number(const GaussianState& state);

/// Pairwise number correlations C_ij = <b_i^dag b_j> - <b_i^dag><b_j>.
/// With the x = (a + a^dag)/2 convention the factor is one:
///   C_ij = cov(x_i, x_j) + cov(y_i, y_j)
///          + i (cov(x_i, y_j) - cov(y_i, x_j)) - (1/2) delta_ij,
/// where the delta term removes the vacuum contribution so that
/// C_ii = nbar_eff of mode i. C is Hermitian.
CMat pairwise_number_correlations(const GaussianState& state);

}  // namespace cvb
