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

#include "nqca/qchannel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "nqca/error.hpp"

namespace nqca {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_range(const char* field, double value, double lo, double hi) {
  if (!(value >= lo && value <= hi)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s must be in [%g, %g], got %g", field, lo,
                  hi, value);
    throw RangeError(field, buf);
  }
}

double wrap_phase(double phi) {
  double wrapped = std::fmod(phi, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  // fmod can return exactly 2 pi after the shift for tiny negative input.
  return wrapped >= kTwoPi ? 0.0 : wrapped;
}

Matrix2 kraus_sum(const Matrix2& rho, const auto& ops) {
  Matrix2 out = Matrix2::Zero();
  for (const Matrix2& k : ops) out += k * rho * k.adjoint();
  return out;
}

const Matrix2& sigma_x() {
  static const Matrix2 sx = (Matrix2() << 0, 1, 1, 0).finished();
  return sx;
}

}  // namespace

StochasticMatrix2::StochasticMatrix2(double p, double q) : p_(p), q_(q) {
  require_range("p", p, 0.0, 1.0);
  require_range("q", q, 0.0, 1.0);
}

Eigen::Matrix2d StochasticMatrix2::matrix() const {
  return (Eigen::Matrix2d() << 1.0 - p_, q_, p_, 1.0 - q_).finished();
}

UnitaryParams::UnitaryParams(double theta, double phi1, double phi2)
    : theta_(theta), phi1_(wrap_phase(phi1)), phi2_(wrap_phase(phi2)) {
  require_range("theta", theta, 0.0, std::numbers::pi);
  if (!std::isfinite(phi1)) throw RangeError("phi1", "phi1 must be finite");
  if (!std::isfinite(phi2)) throw RangeError("phi2", "phi2 must be finite");
}

ChannelParams::ChannelParams(double eta, double xi, UnitaryParams unitary)
    : eta_(eta), xi_(xi), unitary_(unitary) {
  require_range("eta", eta, -1.0, 1.0);
  require_range("xi", xi, 0.0, 1.0);
}

DiagState2::DiagState2(double m) : m_(m) { require_range("m", m, 0.0, 1.0); }

Matrix2 DiagState2::density() const {
  Matrix2 rho = Matrix2::Zero();
  rho(0, 0) = m_;
  rho(1, 1) = 1.0 - m_;
  return rho;
}

ChannelParams ChannelEmbedding::with(double xi, double phi1,
                                     double phi2) const {
  return ChannelParams(eta, xi, UnitaryParams(theta, phi1, phi2));
}

Matrix2 build_unitary(const UnitaryParams& u) {
  const double c = std::cos(u.theta());
  const double s = std::sin(u.theta());
  const Complex e1 = std::polar(1.0, u.phi1());
  const Complex e2 = std::polar(1.0, u.phi2());
  Matrix2 m;
  m << c, s * e2, -s * e1, c * e1 * e2;
  return m;
}

std::array<Matrix2, 3> dephasing_kraus(double xi) {
  require_range("xi", xi, 0.0, 1.0);
  const Matrix2 id = Matrix2::Identity();
  const Matrix2 sz = (Matrix2() << 1, 0, 0, -1).finished();
  return {std::sqrt(1.0 - xi) * id, std::sqrt(xi) * (id + sz) / 2.0,
          std::sqrt(xi) * (sz - id) / 2.0};
}

std::array<Matrix2, 2> damping_kraus(double eta) {
  require_range("eta", eta, -1.0, 1.0);
  const double s = std::abs(eta);
  Matrix2 l0 = Matrix2::Zero();
  l0(0, 0) = 1.0;
  l0(1, 1) = std::sqrt(1.0 - s);
  // (sigma_x + i sigma_y) / 2 = |0><1|
  Matrix2 l1 = Matrix2::Zero();
  l1(0, 1) = std::sqrt(s);
  if (eta < 0.0) {
    l0 = sigma_x() * l0 * sigma_x();
    l1 = sigma_x() * l1 * sigma_x();
  }
  return {l0, l1};
}

Matrix2 dephase_2d(const Matrix2& rho, double xi) {
  return kraus_sum(rho, dephasing_kraus(xi));
}

Matrix2 amp_damp_2d(const Matrix2& rho, double eta) {
  return kraus_sum(rho, damping_kraus(eta));
}

Matrix2 apply_channel_2d(const Matrix2& rho, const ChannelParams& params) {
  const Matrix2 u = build_unitary(params.unitary());
  return amp_damp_2d(dephase_2d(u * rho * u.adjoint(), params.xi()),
                     params.eta());
}

ChannelEmbedding classical_to_channel(const StochasticMatrix2& t) {
  ChannelEmbedding out;
  out.eta = t.q() - t.p();
  const double denom = 1.0 - std::abs(out.eta);
  if (denom == 0.0) {
    out.theta = std::numbers::pi / 4.0;
    out.degenerate = true;
    return out;
  }
  const double cos2theta =
      std::clamp((1.0 - t.p() - t.q()) / denom, -1.0, 1.0);
  out.theta = 0.5 * std::acos(cos2theta);
  return out;
}

DiagState2 stochastic_apply(const StochasticMatrix2& t, const DiagState2& v) {
  const double m = (1.0 - t.p() - t.q()) * v.m() + t.q();
  return DiagState2(std::clamp(m, 0.0, 1.0));
}

DiagState2 embedded_apply(const StochasticMatrix2& t, const DiagState2& v,
                          double xi, double phi1, double phi2) {
  const ChannelParams params = classical_to_channel(t).with(xi, phi1, phi2);
  const Matrix2 out = apply_channel_2d(v.density(), params);
  return DiagState2(std::clamp(out(0, 0).real(), 0.0, 1.0));
}

}  // namespace nqca
