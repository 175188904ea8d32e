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

// Figure scenarios, parameter sweeps and a grid optimiser built on the
// quantum automaton and the classical oracle.

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nqca/automaton.hpp"
#include "nqca/config.hpp"
#include "nqca/measurement.hpp"

namespace nqca {

struct Scenario {
  std::string name = "scenario";
  int n_sites = 64;
  Topology topology = Topology::open;
  PassOrder pass_order = PassOrder::offset1_first;
  int receptor_site = 0;  // 0: N for an open chain, N/2 + 1 for a ring
  int measure_period = 1;
  Granularity granularity = Granularity::per_step;
  int initial_site = 1;
  double p = 0.5;
  double q = 0.5;
  std::vector<double> xi_values{0.0, 1.0};
  double phi_sum = 0.0;  // phi1 = phi_sum - phi2
  double phi2 = 0.0;
  int t_max = 1000;
  bool classical_baseline = true;

  /// Throws RangeError naming the offending field.
  void validate() const;
  LatticeConfig lattice(double xi) const;
  ReceptorConfig receptor() const;
  StochasticMatrix2 transition() const;

  /// Reads the common keys plus `xi` and `classical_baseline`.
  static Scenario from_config(const KeyValueConfig& config);
};

struct SeriesResult {
  std::string model;  // "quantum" or "classical"
  double xi = 1.0;    // 1 for the classical baseline
  RunRecord record;

  std::string label() const;
};

/// One series per xi value, plus the classical baseline when enabled.
std::vector<SeriesResult> run_scenario(const Scenario& scenario,
                                       const RunOptions& options = {});

enum class Reducer {
  p_tot_at,                    // P_tot(xi) at reducer_step
  classical_minus_quantum_at,  // P_tot(xi=1) - P_tot(xi=0) at reducer_step
  max_quantum_gap,             // max_t P_tot(xi=0) - P_tot(xi=1)
  crossover_step,              // see crossover_step()
};

Reducer parse_reducer(std::string_view text);
std::string_view to_string(Reducer reducer);

/// First index at which the classical curve is at least the quantum one after
/// the quantum curve has been ahead; -1 when that never happens. Differences
/// within `tolerance` count as ties, so rounding noise is not a lead.
long crossover_step(std::span<const double> classical,
                    std::span<const double> quantum,
                    double tolerance = 1e-12);

struct SweepAxis {
  std::string name;  // p, q, xi, phi_sum, phi2, period, n_sites
  std::vector<double> values;
};

struct SweepGrid {
  Scenario base;
  std::vector<SweepAxis> axes;
  Reducer reducer = Reducer::p_tot_at;
  int reducer_step = 0;
  std::size_t budget = 100000;

  std::size_t cell_count() const;
  void validate() const;

  /// Reads `axis.<name>` lists, `reducer`, `reducer_step`, `budget`.
  static SweepGrid from_config(const KeyValueConfig& config);
};

Scenario with_axis_value(Scenario scenario, std::string_view axis,
                         double value);

/// Reducer value for a single parameter point.
double reduce(const Scenario& cell, Reducer reducer, int reducer_step);

struct SweepRow {
  std::vector<double> coords;
  double value = 0.0;
};

struct SweepTable {
  std::vector<std::string> axis_names;
  std::string value_name;
  std::vector<SweepRow> rows;  // row-major over the axes, first axis slowest

  void write_csv(std::ostream& out) const;
};

/// Cells run on `threads` workers; rows are ordered by cell index.
SweepTable sweep(const SweepGrid& grid, int threads = 1);

struct OptimizeResult {
  double best_value = 0.0;
  double best_objective = 0.0;
  std::vector<std::pair<double, double>> evaluations;  // (value, objective)
};

/// Exhaustive argmax; ties go to the smaller parameter value.
OptimizeResult optimize(const std::function<double(double)>& objective,
                        std::span<const double> axis);

/// Grid with exactly one axis; the reducer is the objective.
OptimizeResult optimize(const SweepGrid& grid, int threads = 1);

}  // namespace nqca
