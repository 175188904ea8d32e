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

// Classical Markov chain on the lattice: the same pass schedule, with the
// 2x2 stochastic matrix applied to each bond's probability pair.

#pragma once

#include <vector>

#include "nqca/automaton.hpp"
#include "nqca/measurement.hpp"
#include "nqca/qchannel.hpp"

namespace nqca {

class ClassicalState {
 public:
  explicit ClassicalState(int n_sites);
  explicit ClassicalState(std::vector<double> probs);

  static ClassicalState basis(int n_sites, int site);

  int n_sites() const noexcept { return static_cast<int>(probs_.size()); }
  double operator[](int site) const;  // 1-based
  const std::vector<double>& probs() const noexcept { return probs_; }
  std::vector<double>& probs() noexcept { return probs_; }
  double sum() const;

 private:
  std::vector<double> probs_;
};

/// Each bond (a, b) of pass 0 then pass 1:
///   (P_a, P_b) <- [[1-p, q], [p, 1-q]] (P_a, P_b).
void classical_step(ClassicalState& state, const PassSchedule& passes,
                    const StochasticMatrix2& t);
void classical_pass(ClassicalState& state, const std::vector<PairIndex>& pass,
                    const StochasticMatrix2& t);

/// weight = P_r, then P_r <- 0.
double classical_measure(ClassicalState& state, int receptor);

RunRecord simulate_classical(const PassSchedule& passes, int n_sites,
                             const StochasticMatrix2& t,
                             const ReceptorConfig& receptor, int initial_site,
                             int t_steps);

}  // namespace nqca
