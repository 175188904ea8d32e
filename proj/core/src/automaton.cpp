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

#include "nqca/automaton.hpp"

#include <string>
#include <utility>

#include "nqca/error.hpp"

namespace nqca {

Topology parse_topology(std::string_view text) {
  if (text == "open") return Topology::open;
  if (text == "ring") return Topology::ring;
  throw RangeError("topology", "topology must be open or ring, got '" +
                                   std::string(text) + "'");
}

PassOrder parse_pass_order(std::string_view text) {
  if (text == "offset1_first") return PassOrder::offset1_first;
  if (text == "offset0_first") return PassOrder::offset0_first;
  throw RangeError("pass_order",
                   "pass_order must be offset1_first or offset0_first, got '" +
                       std::string(text) + "'");
}

std::string_view to_string(Topology topology) {
  return topology == Topology::open ? "open" : "ring";
}

std::string_view to_string(PassOrder order) {
  return order == PassOrder::offset1_first ? "offset1_first" : "offset0_first";
}

void LatticeConfig::validate() const {
  if (n_sites < 2) {
    throw RangeError("n_sites",
                     "n_sites must be >= 2, got " + std::to_string(n_sites));
  }
  if (topology == Topology::ring && (n_sites % 2 != 0 || n_sites < 4)) {
    throw RangeError("n_sites", "a ring needs an even n_sites >= 4, got " +
                                    std::to_string(n_sites));
  }
}

PassSchedule schedule(int n_sites, Topology topology, PassOrder order) {
  LatticeConfig probe;
  probe.n_sites = n_sites;
  probe.topology = topology;
  probe.validate();

  std::vector<PairIndex> odd_start;   // (1,2), (3,4), ...
  std::vector<PairIndex> even_start;  // (2,3), (4,5), ...
  for (int a = 1; a + 1 <= n_sites; a += 2) odd_start.push_back({a, a + 1});
  for (int a = 2; a + 1 <= n_sites; a += 2) even_start.push_back({a, a + 1});
  if (topology == Topology::ring) even_start.push_back({n_sites, 1});

  PassSchedule out;
  if (order == PassOrder::offset1_first) {
    out.passes = {std::move(even_start), std::move(odd_start)};
  } else {
    out.passes = {std::move(odd_start), std::move(even_start)};
  }
  return out;
}

PassSchedule schedule(const LatticeConfig& config) {
  return schedule(config.n_sites, config.topology, config.pass_order);
}

Automaton::Automaton(LatticeConfig config)
    : config_(std::move(config)),
      schedule_(schedule(config_)),
      unitary_(build_unitary(config_.params.unitary())) {}

void Automaton::check_dimension(const SectorState& state) const {
  if (state.n_sites() != config_.n_sites) {
    throw DimensionMismatch("state has " + std::to_string(state.n_sites()) +
                            " sites, lattice has " +
                            std::to_string(config_.n_sites));
  }
}

void Automaton::apply_pair(SectorState& state, const PairIndex& pair) const {
  pair_unitary(state, pair, unitary_);
  pair_dephase(state, pair, config_.params.xi());
  pair_damp(state, pair, config_.params.eta());
}

void Automaton::apply_pass(SectorState& state, int pass) const {
  check_dimension(state);
  for (const PairIndex& pair : schedule_[pass]) apply_pair(state, pair);
}

void Automaton::step(SectorState& state) const {
  apply_pass(state, 0);
  apply_pass(state, 1);
}

SectorState Automaton::run(SectorState initial, int t_steps,
                           const RunHooks& hooks) const {
  if (t_steps < 0) {
    throw RangeError("t_steps",
                     "t_steps must be >= 0, got " + std::to_string(t_steps));
  }
  check_dimension(initial);
  long tick = 0;
  for (int s = 1; s <= t_steps; ++s) {
    for (int pass = 0; pass < 2; ++pass) {
      apply_pass(initial, pass);
      ++tick;
      const Tick where{s, pass, tick};
      if (hooks.after_pass) hooks.after_pass(initial, where);
      if (pass == 1 && hooks.after_step) hooks.after_step(initial, where);
    }
  }
  return initial;
}

void step(SectorState& state, const LatticeConfig& config) {
  Automaton(config).step(state);
}

}  // namespace nqca
