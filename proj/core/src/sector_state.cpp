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

#include "nqca/sector_state.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "nqca/error.hpp"

namespace nqca {
namespace {

void require_site(int site, int n_sites, const char* field) {
  if (site < 1 || site > n_sites) {
    throw RangeError(field, std::string(field) + " must be in [1, " +
                                std::to_string(n_sites) + "], got " +
                                std::to_string(site));
  }
}

}  // namespace

void validate_pair(const PairIndex& pair, int n_sites) {
  require_site(pair.a, n_sites, "pair.a");
  require_site(pair.b, n_sites, "pair.b");
  const bool forward = pair.b == pair.a + 1;
  const bool wrap = pair.a == n_sites && pair.b == 1 && n_sites > 2;
  if (!forward && !wrap) {
    throw RangeError("pair", "(" + std::to_string(pair.a) + ", " +
                                 std::to_string(pair.b) +
                                 ") is not a neighbouring bond");
  }
}

SectorState::SectorState(int n_sites) {
  if (n_sites < 1) {
    throw RangeError("n_sites", "n_sites must be positive, got " +
                                    std::to_string(n_sites));
  }
  rho_ = Eigen::MatrixXcd::Zero(n_sites, n_sites);
}

SectorState::SectorState(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
    throw DimensionMismatch("sector state must be a non-empty square matrix");
  }
}

SectorState SectorState::basis(int n_sites, int site) {
  SectorState state(n_sites);
  require_site(site, n_sites, "site");
  state.rho_(site - 1, site - 1) = 1.0;
  return state;
}

Complex SectorState::at(int row_site, int col_site) const {
  require_site(row_site, n_sites(), "row");
  require_site(col_site, n_sites(), "column");
  return rho_(row_site - 1, col_site - 1);
}

double SectorState::population(int site) const {
  require_site(site, n_sites(), "site");
  return rho_(site - 1, site - 1).real();
}

Eigen::VectorXd SectorState::populations() const {
  return rho_.diagonal().real();
}

double SectorState::trace() const { return rho_.diagonal().real().sum(); }

double SectorState::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double SectorState::max_offdiagonal() const {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < rho_.cols(); ++j) {
    for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
      if (i != j) worst = std::max(worst, std::abs(rho_(i, j)));
    }
  }
  return worst;
}

double SectorState::min_eigenvalue() const {
  const Eigen::MatrixXcd herm = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void SectorState::check_invariants(bool check_psd, double tol) const {
  const double herm = hermiticity_error();
  if (!(herm <= tol)) {
    throw InvariantViolation("state is not Hermitian (max |rho - rho^+| = " +
                             std::to_string(herm) + ")");
  }
  const double tr = trace();
  if (!(tr >= -tol && tr <= 1.0 + tol)) {
    throw InvariantViolation("trace out of [0, 1]: " + std::to_string(tr));
  }
  if (check_psd) {
    const double lo = min_eigenvalue();
    if (lo < -tol) {
      throw InvariantViolation("state is not positive semidefinite (min "
                               "eigenvalue " +
                               std::to_string(lo) + ")");
    }
  }
}

void SectorState::write_csv(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho_.cols(); ++j) {
      if (j > 0) out << ',';
      out << rho_(i, j).real() << ',' << rho_(i, j).imag();
    }
    out << '\n';
  }
  out.precision(old_precision);
}

void pair_unitary(SectorState& state, const PairIndex& pair,
                  const Matrix2& u) {
  validate_pair(pair, state.n_sites());
  Eigen::MatrixXcd& rho = state.rho();
  const Eigen::Index i = pair.a - 1;
  const Eigen::Index j = pair.b - 1;
  const Eigen::Index n = rho.rows();

  for (Eigen::Index k = 0; k < n; ++k) {
    if (k == i || k == j) continue;
    const Complex ra = rho(i, k);
    const Complex rb = rho(j, k);
    const Complex new_a = u(0, 0) * ra + u(0, 1) * rb;
    const Complex new_b = u(1, 0) * ra + u(1, 1) * rb;
    rho(i, k) = new_a;
    rho(j, k) = new_b;
    rho(k, i) = std::conj(new_a);
    rho(k, j) = std::conj(new_b);
  }

  Matrix2 block;
  block << rho(i, i), rho(i, j), rho(j, i), rho(j, j);
  block = u * block * u.adjoint();
  rho(i, i) = block(0, 0).real();
  rho(j, j) = block(1, 1).real();
  rho(i, j) = 0.5 * (block(0, 1) + std::conj(block(1, 0)));
  rho(j, i) = std::conj(rho(i, j));
}

void pair_unitary(SectorState& state, const PairIndex& pair,
                  const UnitaryParams& u) {
  pair_unitary(state, pair, build_unitary(u));
}

void pair_dephase(SectorState& state, const PairIndex& pair, double xi) {
  validate_pair(pair, state.n_sites());
  if (!(xi >= 0.0 && xi <= 1.0)) {
    throw RangeError("xi", "xi must be in [0, 1], got " + std::to_string(xi));
  }
  if (xi == 0.0) return;
  Eigen::MatrixXcd& rho = state.rho();
  const Eigen::Index i = pair.a - 1;
  const Eigen::Index j = pair.b - 1;
  const double f = std::sqrt(1.0 - xi);
  for (Eigen::Index k = 0; k < rho.rows(); ++k) {
    if (k == i || k == j) continue;
    rho(i, k) *= f;
    rho(k, i) *= f;
    rho(j, k) *= f;
    rho(k, j) *= f;
  }
  rho(i, j) *= 1.0 - xi;
  rho(j, i) *= 1.0 - xi;
}

void pair_damp(SectorState& state, const PairIndex& pair, double eta) {
  validate_pair(pair, state.n_sites());
  if (!(eta >= -1.0 && eta <= 1.0)) {
    throw RangeError("eta",
                     "eta must be in [-1, 1], got " + std::to_string(eta));
  }
  if (eta == 0.0) return;
  Eigen::MatrixXcd& rho = state.rho();
  // Population flows from source y into sink x.
  const Eigen::Index x = eta > 0.0 ? pair.a - 1 : pair.b - 1;
  const Eigen::Index y = eta > 0.0 ? pair.b - 1 : pair.a - 1;
  const double s = std::abs(eta);
  const double g = std::sqrt(1.0 - s);

  const double moved = s * rho(y, y).real();
  for (Eigen::Index k = 0; k < rho.rows(); ++k) {
    if (k == y) continue;
    rho(y, k) *= g;
    rho(k, y) *= g;
  }
  rho(x, x) += moved;
  rho(y, y) = (1.0 - s) * rho(y, y).real();
}

}  // namespace nqca
