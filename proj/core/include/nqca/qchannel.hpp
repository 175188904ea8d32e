// Copyright 2026 The nqca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Two-dimensional channels acting on the span of two neighbouring sites, and
// the embedding of 2x2 column-stochastic matrices into them.
//
// Basis convention: the first basis vector is the lower site index of a pair
// and carries the "excitation probability" m of diag(m, 1 - m).

#pragma once

#include <array>
#include <complex>

#include <Eigen/Core>

namespace nqca {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

/// Column-stochastic matrix [[1-p, q], [p, 1-q]]. p moves weight from the
/// first basis state to the second, q the other way.
class StochasticMatrix2 {
 public:
  StochasticMatrix2(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  bool doubly_stochastic() const noexcept { return p_ == q_; }
  Eigen::Matrix2d matrix() const;

 private:
  double p_;
  double q_;
};

/// theta in [0, pi]; phases are wrapped into [0, 2 pi).
class UnitaryParams {
 public:
  UnitaryParams() = default;
  UnitaryParams(double theta, double phi1, double phi2);

  double theta() const noexcept { return theta_; }
  double phi1() const noexcept { return phi1_; }
  double phi2() const noexcept { return phi2_; }
  double phi_sum() const noexcept { return phi1_ + phi2_; }

 private:
  double theta_ = 0.0;
  double phi1_ = 0.0;
  double phi2_ = 0.0;
};

/// Parameters of the composite pair channel: unitary, then dephasing of
/// strength xi, then (possibly swapped) amplitude damping of strength eta.
class ChannelParams {
 public:
  ChannelParams() = default;
  ChannelParams(double eta, double xi, UnitaryParams unitary);

  double eta() const noexcept { return eta_; }
  double xi() const noexcept { return xi_; }
  const UnitaryParams& unitary() const noexcept { return unitary_; }

 private:
  double eta_ = 0.0;
  double xi_ = 0.0;
  UnitaryParams unitary_;
};

/// diag(m, 1 - m), equivalently the probability vector (m, 1 - m).
class DiagState2 {
 public:
  explicit DiagState2(double m);

  double m() const noexcept { return m_; }
  Matrix2 density() const;

 private:
  double m_;
};

/// Result of mapping (p, q) onto channel parameters. xi and the two phases
/// are not fixed by the classical process and are chosen by the caller.
struct ChannelEmbedding {
  double eta = 0.0;
  double theta = 0.0;
  // |q - p| == 1: the angle formula is 0/0 and theta is set to pi/4. The
  // damping then erases any dependence on theta.
  bool degenerate = false;

  ChannelParams with(double xi, double phi1 = 0.0, double phi2 = 0.0) const;
};

Matrix2 build_unitary(const UnitaryParams& u);

std::array<Matrix2, 3> dephasing_kraus(double xi);
std::array<Matrix2, 2> damping_kraus(double eta);

/// Kraus sum over dephasing_kraus(xi).
Matrix2 dephase_2d(const Matrix2& rho, double xi);
/// Kraus sum over damping_kraus(eta); eta < 0 is the sigma_x-conjugated set.
Matrix2 amp_damp_2d(const Matrix2& rho, double eta);

/// Full pair channel on a 2x2 density matrix.
Matrix2 apply_channel_2d(const Matrix2& rho, const ChannelParams& params);

ChannelEmbedding classical_to_channel(const StochasticMatrix2& t);

/// m' = (1 - p - q) m + q.
DiagState2 stochastic_apply(const StochasticMatrix2& t, const DiagState2& v);

/// Runs diag(m, 1 - m) through the channel built by classical_to_channel
/// and reads back the first diagonal entry.
DiagState2 embedded_apply(const StochasticMatrix2& t, const DiagState2& v,
                          double xi = 1.0, double phi1 = 0.0,
                          double phi2 = 0.0);

}  // namespace nqca
