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

#include "nqca/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include "nqca/classical_oracle.hpp"
#include "nqca/error.hpp"

namespace nqca {
namespace {

const std::vector<std::string_view> kCommonKeys = {
    "schema_version", "kind",           "name",        "n_sites",
    "topology",       "pass_order",     "receptor",    "initial_site",
    "measure_period", "granularity",    "p",           "q",
    "phi_sum",        "phi2",           "t_max",       "xi"};

const std::vector<std::string_view> kAxisNames = {
    "p", "q", "xi", "phi_sum", "phi2", "period", "n_sites"};

std::vector<std::string_view> with_keys(
    std::initializer_list<std::string_view> extra) {
  std::vector<std::string_view> keys = kCommonKeys;
  keys.insert(keys.end(), extra);
  return keys;
}

void check_schema(const KeyValueConfig& config,
                  std::initializer_list<std::string_view> kinds) {
  const int version = config.integer("schema_version");
  if (version != kSchemaVersion) {
    throw ConfigError("schema_version",
                      "unsupported schema_version " + std::to_string(version) +
                          " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  const std::string kind = config.text("kind");
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
    throw ConfigError("kind", "unexpected kind '" + kind + "' in " +
                                  config.source());
  }
}

// Reads every key shared by scenarios, sweeps and optimisations.
Scenario read_common(const KeyValueConfig& config) {
  Scenario s;
  if (config.has("name")) s.name = config.text("name");
  s.n_sites = config.integer("n_sites");
  if (config.has("topology")) s.topology = parse_topology(config.text("topology"));
  if (config.has("pass_order")) {
    s.pass_order = parse_pass_order(config.text("pass_order"));
  }
  if (config.has("receptor") && config.text("receptor") != "auto") {
    s.receptor_site = config.integer("receptor");
  }
  if (config.has("initial_site")) s.initial_site = config.integer("initial_site");
  if (config.has("measure_period")) {
    s.measure_period = config.integer("measure_period");
  }
  if (config.has("granularity")) {
    s.granularity = parse_granularity(config.text("granularity"));
  }
  s.p = config.number("p");
  s.q = config.number("q");
  if (config.has("phi_sum")) s.phi_sum = config.number("phi_sum");
  if (config.has("phi2")) s.phi2 = config.number("phi2");
  s.t_max = config.integer("t_max");
  if (config.has("xi")) s.xi_values = config.numbers("xi");
  return s;
}

int integral(std::string_view axis, double value) {
  const double rounded = std::round(value);
  if (rounded != value) {
    throw RangeError(std::string(axis), std::string(axis) +
                                            " must be an integer, got " +
                                            std::to_string(value));
  }
  return static_cast<int>(rounded);
}

// P_tot at the last event whose time does not exceed `time`.
double p_tot_at_time(const RunRecord& record, long time) {
  double value = 0.0;
  for (const RunEvent& e : record.events) {
    if (e.time > time) break;
    value = e.p_tot;
  }
  return value;
}

RunRecord quantum_run(const Scenario& s, double xi) {
  return simulate_absorption(s.lattice(xi), s.receptor(), s.initial_site,
                             s.t_max);
}

RunRecord classical_run(const Scenario& s) {
  return simulate_classical(schedule(s.n_sites, s.topology, s.pass_order),
                            s.n_sites, s.transition(), s.receptor(),
                            s.initial_site, s.t_max);
}

std::string format_g(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

OptimizeResult argmax(std::vector<std::pair<double, double>> evaluations) {
  if (evaluations.empty()) {
    throw RangeError("axis", "optimisation axis is empty");
  }
  OptimizeResult out;
  bool have = false;
  for (const auto& [value, objective] : evaluations) {
    if (std::isnan(objective)) continue;
    const bool better =
        !have || objective > out.best_objective ||
        (objective == out.best_objective && value < out.best_value);
    if (better) {
      out.best_value = value;
      out.best_objective = objective;
      have = true;
    }
  }
  if (!have) throw RangeError("objective", "objective is NaN everywhere");
  out.evaluations = std::move(evaluations);
  return out;
}

}  // namespace

void Scenario::validate() const {
  LatticeConfig probe;
  probe.n_sites = n_sites;
  probe.topology = topology;
  probe.validate();
  (void)transition();
  if (xi_values.empty()) throw RangeError("xi", "xi needs at least one value");
  for (double xi : xi_values) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
      throw RangeError("xi", "xi must be in [0, 1], got " + std::to_string(xi));
    }
  }
  if (!std::isfinite(phi_sum)) throw RangeError("phi_sum", "phi_sum must be finite");
  if (!std::isfinite(phi2)) throw RangeError("phi2", "phi2 must be finite");
  if (initial_site < 1 || initial_site > n_sites) {
    throw RangeError("initial_site", "initial_site must be in [1, " +
                                         std::to_string(n_sites) + "], got " +
                                         std::to_string(initial_site));
  }
  if (t_max < 0) {
    throw RangeError("t_max", "t_max must be >= 0, got " + std::to_string(t_max));
  }
  if (receptor_site != 0) receptor().validate(n_sites);
  if (measure_period < 1) {
    throw RangeError("measure_period", "measure_period must be >= 1, got " +
                                           std::to_string(measure_period));
  }
}

StochasticMatrix2 Scenario::transition() const { return {p, q}; }

ReceptorConfig Scenario::receptor() const {
  ReceptorConfig r;
  r.site = receptor_site != 0 ? receptor_site
                              : ReceptorConfig::default_site(n_sites, topology);
  r.period = measure_period;
  r.granularity = granularity;
  return r;
}

LatticeConfig Scenario::lattice(double xi) const {
  LatticeConfig config;
  config.n_sites = n_sites;
  config.topology = topology;
  config.pass_order = pass_order;
  config.params = classical_to_channel(transition()).with(xi, phi_sum - phi2, phi2);
  return config;
}

Scenario Scenario::from_config(const KeyValueConfig& config) {
  check_schema(config, {"scenario"});
  config.reject_unknown(with_keys({"classical_baseline"}));
  Scenario s = read_common(config);
  if (config.has("classical_baseline")) {
    s.classical_baseline = config.boolean("classical_baseline");
  }
  s.validate();
  return s;
}

std::string SeriesResult::label() const {
  return model == "classical" ? model : model + "_xi" + format_g(xi);
}

std::vector<SeriesResult> run_scenario(const Scenario& scenario,
                                       const RunOptions& options) {
  scenario.validate();
  std::vector<SeriesResult> out;
  for (double xi : scenario.xi_values) {
    out.push_back({"quantum", xi,
                   simulate_absorption(scenario.lattice(xi), scenario.receptor(),
                                       scenario.initial_site, scenario.t_max,
                                       options)});
  }
  if (scenario.classical_baseline) {
    out.push_back({"classical", 1.0, classical_run(scenario)});
  }
  return out;
}

Reducer parse_reducer(std::string_view text) {
  if (text == "p_tot_at") return Reducer::p_tot_at;
  if (text == "classical_minus_quantum_at") return Reducer::classical_minus_quantum_at;
  if (text == "max_quantum_gap") return Reducer::max_quantum_gap;
  if (text == "crossover_step") return Reducer::crossover_step;
  throw ConfigError("reducer", "unknown reducer '" + std::string(text) + "'");
}

std::string_view to_string(Reducer reducer) {
  switch (reducer) {
    case Reducer::p_tot_at: return "p_tot_at";
    case Reducer::classical_minus_quantum_at: return "classical_minus_quantum_at";
    case Reducer::max_quantum_gap: return "max_quantum_gap";
    case Reducer::crossover_step: return "crossover_step";
  }
  return "unknown";
}

long crossover_step(std::span<const double> classical,
                    std::span<const double> quantum, double tolerance) {
  const std::size_t n = std::min(classical.size(), quantum.size());
  bool quantum_led = false;
  for (std::size_t t = 0; t < n; ++t) {
    if (quantum[t] - classical[t] > tolerance) {
      quantum_led = true;
    } else if (quantum_led) {
      return static_cast<long>(t);
    }
  }
  return -1;
}

std::size_t SweepGrid::cell_count() const {
  std::size_t cells = 1;
  for (const SweepAxis& axis : axes) cells *= axis.values.size();
  return cells;
}

void SweepGrid::validate() const {
  if (axes.empty()) throw ConfigError("axis", "a sweep needs at least one axis");
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const SweepAxis& axis = axes[i];
    const std::string key = "axis." + axis.name;
    if (std::find(kAxisNames.begin(), kAxisNames.end(), axis.name) ==
        kAxisNames.end()) {
      throw ConfigError(key, "unknown sweep axis '" + axis.name + "'");
    }
    if (axis.values.empty()) throw ConfigError(key, key + " has no values");
    for (std::size_t j = 0; j < i; ++j) {
      if (axes[j].name == axis.name) {
        throw ConfigError(key, "duplicate sweep axis '" + axis.name + "'");
      }
    }
  }
  if (cell_count() > budget) {
    throw BudgetExceeded("sweep has " + std::to_string(cell_count()) +
                         " cells, budget is " + std::to_string(budget));
  }
  if (reducer_step < 0 || reducer_step > base.t_max) {
    throw RangeError("reducer_step", "reducer_step must be in [0, t_max], got " +
                                         std::to_string(reducer_step));
  }
  const bool xi_axis = std::any_of(axes.begin(), axes.end(), [](const SweepAxis& a) {
    return a.name == "xi";
  });
  if (reducer == Reducer::p_tot_at && !xi_axis && base.xi_values.size() != 1) {
    throw ConfigError("xi", "reducer p_tot_at needs a single xi or an xi axis");
  }
}

SweepGrid SweepGrid::from_config(const KeyValueConfig& config) {
  check_schema(config, {"sweep", "optimize"});
  std::vector<std::string_view> allowed =
      with_keys({"reducer", "reducer_step", "budget"});
  std::vector<std::string> axis_keys;
  for (std::string_view name : kAxisNames) axis_keys.push_back("axis." + std::string(name));
  for (const std::string& k : axis_keys) allowed.push_back(k);
  config.reject_unknown(allowed);

  SweepGrid grid;
  grid.base = read_common(config);
  for (const auto& entry : config.entries()) {
    if (entry.key.rfind("axis.", 0) == 0) {
      grid.axes.push_back({entry.key.substr(5), config.numbers(entry.key)});
    }
  }
  grid.reducer = parse_reducer(config.text("reducer"));
  if (config.has("reducer_step")) grid.reducer_step = config.integer("reducer_step");
  if (config.has("budget")) {
    const int budget = config.integer("budget");
    if (budget < 1) throw RangeError("budget", "budget must be >= 1");
    grid.budget = static_cast<std::size_t>(budget);
  }
  if (config.text("kind") == "optimize" && grid.axes.size() != 1) {
    throw ConfigError("axis", "optimize needs exactly one axis.<name> entry");
  }
  grid.validate();
  return grid;
}

Scenario with_axis_value(Scenario s, std::string_view axis, double value) {
  if (axis == "p") {
    s.p = value;
  } else if (axis == "q") {
    s.q = value;
  } else if (axis == "xi") {
    s.xi_values = {value};
  } else if (axis == "phi_sum") {
    s.phi_sum = value;
  } else if (axis == "phi2") {
    s.phi2 = value;
  } else if (axis == "period") {
    s.measure_period = integral(axis, value);
  } else if (axis == "n_sites") {
    s.n_sites = integral(axis, value);
  } else {
    throw ConfigError("axis." + std::string(axis),
                      "unknown sweep axis '" + std::string(axis) + "'");
  }
  return s;
}

double reduce(const Scenario& cell, Reducer reducer, int reducer_step) {
  cell.validate();
  switch (reducer) {
    case Reducer::p_tot_at:
      if (cell.xi_values.size() != 1) {
        throw ConfigError("xi", "reducer p_tot_at needs exactly one xi");
      }
      return p_tot_at_time(quantum_run(cell, cell.xi_values.front()), reducer_step);
    case Reducer::classical_minus_quantum_at:
      return p_tot_at_time(classical_run(cell), reducer_step) -
             p_tot_at_time(quantum_run(cell, 0.0), reducer_step);
    case Reducer::max_quantum_gap: {
      const std::vector<double> c = classical_run(cell).p_tot();
      const std::vector<double> qn = quantum_run(cell, 0.0).p_tot();
      double gap = -1.0;
      for (std::size_t t = 0; t < c.size(); ++t) gap = std::max(gap, qn[t] - c[t]);
      return gap;
    }
    case Reducer::crossover_step: {
      const RunRecord c = classical_run(cell);
      const RunRecord qn = quantum_run(cell, 0.0);
      const long index = crossover_step(c.p_tot(), qn.p_tot());
      return index < 0 ? -1.0 : static_cast<double>(c.events[index].time);
    }
  }
  return 0.0;
}

void SweepTable::write_csv(std::ostream& out) const {
  for (const std::string& name : axis_names) out << name << ',';
  out << value_name << '\n';
  char buf[40];
  for (const SweepRow& row : rows) {
    for (double c : row.coords) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      out << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.17g", row.value);
    out << buf << '\n';
  }
}

SweepTable sweep(const SweepGrid& grid, int threads) {
  grid.validate();
  const std::size_t cells = grid.cell_count();

  SweepTable table;
  table.value_name = std::string(to_string(grid.reducer));
  for (const SweepAxis& axis : grid.axes) table.axis_names.push_back(axis.name);

  // Expand and validate every cell up front so configuration errors surface
  // before any work starts.
  std::vector<Scenario> scenarios;
  scenarios.reserve(cells);
  table.rows.resize(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    Scenario s = grid.base;
    std::size_t rest = cell;
    std::vector<double> coords(grid.axes.size());
    for (std::size_t k = grid.axes.size(); k-- > 0;) {
      const SweepAxis& axis = grid.axes[k];
      coords[k] = axis.values[rest % axis.values.size()];
      rest /= axis.values.size();
    }
    for (std::size_t k = 0; k < grid.axes.size(); ++k) {
      s = with_axis_value(std::move(s), grid.axes[k].name, coords[k]);
    }
    s.validate();
    table.rows[cell].coords = std::move(coords);
    scenarios.push_back(std::move(s));
  }

  std::vector<std::exception_ptr> errors(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      try {
        table.rows[cell].value =
            reduce(scenarios[cell], grid.reducer, grid.reducer_step);
      } catch (...) {
        errors[cell] = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(cells, 1)));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return table;
}

OptimizeResult optimize(const std::function<double(double)>& objective,
                        std::span<const double> axis) {
  std::vector<std::pair<double, double>> evaluations;
  evaluations.reserve(axis.size());
  for (double value : axis) evaluations.emplace_back(value, objective(value));
  return argmax(std::move(evaluations));
}

OptimizeResult optimize(const SweepGrid& grid, int threads) {
  if (grid.axes.size() != 1) {
    throw ConfigError("axis", "optimize needs exactly one axis");
  }
  if (grid.axes.front().values.empty()) {
    throw RangeError("axis", "optimisation axis is empty");
  }
  const SweepTable table = sweep(grid, threads);
  std::vector<std::pair<double, double>> evaluations;
  for (const SweepRow& row : table.rows) {
    evaluations.emplace_back(row.coords.front(), row.value);
  }
  return argmax(std::move(evaluations));
}

}  // namespace nqca
