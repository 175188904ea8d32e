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

// Receptor absorption as a repeated projective measurement {1 - |r><r|,
// |r><r|}. The unabsorbed branch is kept unnormalised, so its trace is the
// survival probability and P_tot = 1 - trace.

#pragma once

#include <span>
#include <vector>

#include "nqca/automaton.hpp"
#include "nqca/sector_state.hpp"

namespace nqca {

enum class Granularity { per_step, per_pass };

Granularity parse_granularity(std::string_view text);
std::string_view to_string(Granularity granularity);

struct ReceptorConfig {
  int site = 1;
  int period = 1;
  Granularity granularity = Granularity::per_step;

  /// N for an open chain, N/2 + 1 for a ring.
  static int default_site(int n_sites, Topology topology);
  void validate(int n_sites) const;
};

/// Below this surviving trace the run is treated as exhausted.
inline constexpr double kExhaustedTrace = 1e-15;

struct MeasurementOutcome {
  double weight = 0.0;  // unnormalised rho_rr removed by this event
  bool exhausted = false;
};

/// Captures rho_rr and zeroes row and column r.
MeasurementOutcome measure_and_condition(SectorState& state, int receptor);

/// One measurement event. `time` is in steps or passes depending on the
/// receptor granularity; the record starts with a time-0 row.
struct RunEvent {
  long time = 0;
  double rho_rr = 0.0;      // unnormalised weight captured
  double p_abs_inst = 0.0;  // rho_rr / surviving trace before the event
  double p_tot = 0.0;       // 1 - surviving trace after the event
  double trace = 1.0;       // surviving trace after the event
};

struct RunRecord {
  std::vector<RunEvent> events;

  std::vector<double> p_tot() const;
  std::vector<double> p_abs_inst() const;
};

/// 1 - prod_{s <= t} (1 - p_abs_inst(s)), i.e. the normalised recursion.
std::vector<double> integrated_probability(const RunRecord& record);
std::vector<double> integrated_probability(std::span<const double> p_abs_inst);

/// rho_NN after the next step, from the 3x3 tail block of an open chain whose
/// receptor row and column were just zeroed. Exact when the step is unitary
/// on that block (xi = 0, eta = 0) and the bond (N-2, N-1) runs first.
double predict_next_absorption(const SectorState& state,
                               const ChannelParams& params);

struct RunOptions {
  bool check_invariants = true;  // Hermiticity and trace, every event
  bool check_psd = false;        // adds an eigenvalue check, O(N^3)
};

/// Hook set that measures at the receptor and appends to `record`.
RunHooks absorption_hooks(const ReceptorConfig& receptor, RunRecord& record,
                          const RunOptions& options = {});

/// Quantum run from |initial_site> for t_steps automaton steps.
RunRecord simulate_absorption(const LatticeConfig& lattice,
                              const ReceptorConfig& receptor,
                              int initial_site, int t_steps,
                              const RunOptions& options = {});

}  // namespace nqca
