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

// Partitioned noisy cellular automaton: one step applies the composite pair
// channel on one sublattice of disjoint bonds, then on the shifted one.

#pragma once

#include <array>
#include <functional>
#include <string_view>
#include <vector>

#include "nqca/qchannel.hpp"
#include "nqca/sector_state.hpp"

namespace nqca {

enum class Topology { open, ring };

/// offset1_first runs bonds (2,3), (4,5), ... before (1,2), (3,4), ...; with
/// even N this puts the receptor bond (N-1, N) of an open chain last.
enum class PassOrder { offset1_first, offset0_first };

Topology parse_topology(std::string_view text);
PassOrder parse_pass_order(std::string_view text);
std::string_view to_string(Topology topology);
std::string_view to_string(PassOrder order);

struct LatticeConfig {
  int n_sites = 2;
  Topology topology = Topology::open;
  PassOrder pass_order = PassOrder::offset1_first;
  ChannelParams params;

  /// Open chains need N >= 2; rings need an even N >= 4.
  void validate() const;
};

struct PassSchedule {
  std::array<std::vector<PairIndex>, 2> passes;

  const std::vector<PairIndex>& operator[](int pass) const {
    return passes[static_cast<std::size_t>(pass)];
  }
};

PassSchedule schedule(int n_sites, Topology topology, PassOrder order);
PassSchedule schedule(const LatticeConfig& config);

/// Position in the run after a pass has been applied. `step` counts
/// completed-or-in-progress steps from 1, `pass` is 0 or 1 within the step,
/// `tick` counts passes from 1.
struct Tick {
  int step = 0;
  int pass = 0;
  long tick = 0;
};

using TickHook = std::function<void(SectorState&, const Tick&)>;

struct RunHooks {
  TickHook after_pass;  // every pass
  TickHook after_step;  // after the second pass of each step
};

class Automaton {
 public:
  explicit Automaton(LatticeConfig config);

  const LatticeConfig& config() const noexcept { return config_; }
  const PassSchedule& passes() const noexcept { return schedule_; }
  const Matrix2& unitary() const noexcept { return unitary_; }

  /// Composite channel on one bond: unitary, dephasing, damping.
  void apply_pair(SectorState& state, const PairIndex& pair) const;
  /// Half step.
  void apply_pass(SectorState& state, int pass) const;
  void step(SectorState& state) const;

  SectorState run(SectorState initial, int t_steps,
                  const RunHooks& hooks = {}) const;

 private:
  void check_dimension(const SectorState& state) const;

  LatticeConfig config_;
  PassSchedule schedule_;
  Matrix2 unitary_;
};

void step(SectorState& state, const LatticeConfig& config);

}  // namespace nqca
