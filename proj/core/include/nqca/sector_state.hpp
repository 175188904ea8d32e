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

// Lattice state restricted to the single-excitation sector, and the pair
// channels lifted from a two-site block to the full N-dimensional sector.

#pragma once

#include <iosfwd>

#include <Eigen/Core>

#include "nqca/qchannel.hpp"

namespace nqca {

/// An ordered neighbouring pair of 1-based sites: (n, n+1), or (N, 1) as
/// the wrap-around bond of a ring. `a` plays the role of the first basis
/// vector of the 2x2 channels.
struct PairIndex {
  int a = 0;
  int b = 0;

  friend bool operator==(const PairIndex&, const PairIndex&) = default;
};

/// Throws RangeError unless `pair` is a valid bond of an N-site lattice.
void validate_pair(const PairIndex& pair, int n_sites);

/// Dense N x N density matrix over the basis {|1>, ..., |N>}. Pair
/// operations mutate it in place. After conditioning on failed absorption
/// the trace drops below one and is not renormalised.
class SectorState {
 public:
  explicit SectorState(int n_sites);
  explicit SectorState(Eigen::MatrixXcd rho);

  /// |site><site|.
  static SectorState basis(int n_sites, int site);

  int n_sites() const noexcept { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& rho() const noexcept { return rho_; }
  Eigen::MatrixXcd& rho() noexcept { return rho_; }

  Complex at(int row_site, int col_site) const;
  double population(int site) const;
  Eigen::VectorXd populations() const;
  double trace() const;

  double hermiticity_error() const;
  double max_offdiagonal() const;
  /// O(N^3); only used by debug checks and tests.
  double min_eigenvalue() const;

  /// Hermiticity and trace in [0, 1]; with `check_psd` also the smallest
  /// eigenvalue. Throws InvariantViolation.
  void check_invariants(bool check_psd, double tol = 1e-10) const;

  /// One row per basis index, each entry written as "re,im".
  void write_csv(std::ostream& out) const;

 private:
  Eigen::MatrixXcd rho_;
};

/// rho -> V rho V^dagger with V = u on the (a, b) block, identity elsewhere.
void pair_unitary(SectorState& state, const PairIndex& pair, const Matrix2& u);
void pair_unitary(SectorState& state, const PairIndex& pair,
                  const UnitaryParams& u);

/// Local phase damping on both qubits of the pair: rho_ab scales by 1 - xi,
/// pair-to-rest coherences by sqrt(1 - xi).
void pair_dephase(SectorState& state, const PairIndex& pair, double xi);

/// Kraus pair {L0 + 1_rest, L1 + 0_rest}. eta >= 0 moves population b -> a,
/// eta < 0 moves it a -> b, with strength |eta|.
void pair_damp(SectorState& state, const PairIndex& pair, double eta);

}  // namespace nqca
