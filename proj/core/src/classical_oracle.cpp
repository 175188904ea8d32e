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

#include "nqca/classical_oracle.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "nqca/error.hpp"

namespace nqca {

ClassicalState::ClassicalState(int n_sites) {
  if (n_sites < 1) {
    throw RangeError("n_sites", "n_sites must be positive, got " +
                                    std::to_string(n_sites));
  }
  probs_.assign(static_cast<std::size_t>(n_sites), 0.0);
}

ClassicalState::ClassicalState(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw RangeError("n_sites", "empty probability vector");
  for (double p : probs_) {
    if (!(p >= 0.0)) throw RangeError("probs", "negative probability");
  }
}

ClassicalState ClassicalState::basis(int n_sites, int site) {
  ClassicalState state(n_sites);
  if (site < 1 || site > n_sites) {
    throw RangeError("site", "site must be in [1, " + std::to_string(n_sites) +
                                 "], got " + std::to_string(site));
  }
  state.probs_[static_cast<std::size_t>(site - 1)] = 1.0;
  return state;
}

double ClassicalState::operator[](int site) const {
  return probs_.at(static_cast<std::size_t>(site - 1));
}

double ClassicalState::sum() const {
  return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

void classical_pass(ClassicalState& state, const std::vector<PairIndex>& pass,
                    const StochasticMatrix2& t) {
  std::vector<double>& probs = state.probs();
  const double p = t.p();
  const double q = t.q();
  for (const PairIndex& pair : pass) {
    double& pa = probs.at(static_cast<std::size_t>(pair.a - 1));
    double& pb = probs.at(static_cast<std::size_t>(pair.b - 1));
    const double a = pa;
    const double b = pb;
    pa = (1.0 - p) * a + q * b;
    pb = p * a + (1.0 - q) * b;
  }
}

void classical_step(ClassicalState& state, const PassSchedule& passes,
                    const StochasticMatrix2& t) {
  classical_pass(state, passes[0], t);
  classical_pass(state, passes[1], t);
}

double classical_measure(ClassicalState& state, int receptor) {
  if (receptor < 1 || receptor > state.n_sites()) {
    throw RangeError("receptor", "receptor " + std::to_string(receptor) +
                                     " outside the lattice");
  }
  double& slot = state.probs()[static_cast<std::size_t>(receptor - 1)];
  const double weight = slot;
  slot = 0.0;
  return weight;
}

RunRecord simulate_classical(const PassSchedule& passes, int n_sites,
                             const StochasticMatrix2& t,
                             const ReceptorConfig& receptor, int initial_site,
                             int t_steps) {
  receptor.validate(n_sites);
  if (t_steps < 0) {
    throw RangeError("t_steps",
                     "t_steps must be >= 0, got " + std::to_string(t_steps));
  }
  ClassicalState state = ClassicalState::basis(n_sites, initial_site);

  RunRecord record;
  RunEvent start;
  start.trace = state.sum();
  start.p_tot = 1.0 - start.trace;
  record.events.push_back(start);

  auto measure = [&](long time) {
    const double before = state.sum();
    const double weight = classical_measure(state, receptor.site);
    RunEvent event;
    event.time = time;
    event.rho_rr = weight;
    event.p_abs_inst = before > kExhaustedTrace ? weight / before : 0.0;
    event.trace = state.sum();
    event.p_tot = 1.0 - event.trace;
    record.events.push_back(event);
  };

  long tick = 0;
  for (int s = 1; s <= t_steps; ++s) {
    for (int pass = 0; pass < 2; ++pass) {
      classical_pass(state, passes[pass], t);
      ++tick;
      if (receptor.granularity == Granularity::per_pass &&
          tick % receptor.period == 0) {
        measure(tick);
      }
    }
    if (receptor.granularity == Granularity::per_step &&
        s % receptor.period == 0) {
      measure(s);
    }
  }
  return record;
}

}  // namespace nqca
