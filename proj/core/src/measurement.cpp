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

#include "nqca/measurement.hpp"

#include <cmath>
#include <utility>
#include <string>

#include "nqca/error.hpp"

namespace nqca {

Granularity parse_granularity(std::string_view text) {
  if (text == "per_step") return Granularity::per_step;
  if (text == "per_pass") return Granularity::per_pass;
  throw RangeError("granularity", "granularity must be per_step or per_pass, "
                                  "got '" + std::string(text) + "'");
}

std::string_view to_string(Granularity granularity) {
  return granularity == Granularity::per_step ? "per_step" : "per_pass";
}

int ReceptorConfig::default_site(int n_sites, Topology topology) {
  return topology == Topology::open ? n_sites : n_sites / 2 + 1;
}

void ReceptorConfig::validate(int n_sites) const {
  if (site < 1 || site > n_sites) {
    throw RangeError("receptor", "receptor must be in [1, " +
                                     std::to_string(n_sites) + "], got " +
                                     std::to_string(site));
  }
  if (period < 1) {
    throw RangeError("measure_period", "measure_period must be >= 1, got " +
                                           std::to_string(period));
  }
}

MeasurementOutcome measure_and_condition(SectorState& state, int receptor) {
  if (receptor < 1 || receptor > state.n_sites()) {
    throw RangeError("receptor", "receptor " + std::to_string(receptor) +
                                     " outside the lattice");
  }
  Eigen::MatrixXcd& rho = state.rho();
  const Eigen::Index r = receptor - 1;
  MeasurementOutcome out;
  out.weight = rho(r, r).real();
  rho.row(r).setZero();
  rho.col(r).setZero();
  out.exhausted = state.trace() < kExhaustedTrace;
  return out;
}

std::vector<double> RunRecord::p_tot() const {
  std::vector<double> out;
  out.reserve(events.size());
  for (const RunEvent& e : events) out.push_back(e.p_tot);
  return out;
}

std::vector<double> RunRecord::p_abs_inst() const {
  std::vector<double> out;
  out.reserve(events.size());
  for (const RunEvent& e : events) out.push_back(e.p_abs_inst);
  return out;
}

std::vector<double> integrated_probability(std::span<const double> p_abs_inst) {
  std::vector<double> out;
  out.reserve(p_abs_inst.size());
  double survival = 1.0;
  for (double p : p_abs_inst) {
    survival *= 1.0 - p;
    out.push_back(1.0 - survival);
  }
  return out;
}

std::vector<double> integrated_probability(const RunRecord& record) {
  return integrated_probability(record.p_abs_inst());
}

double predict_next_absorption(const SectorState& state,
                               const ChannelParams& params) {
  const int n = state.n_sites();
  if (n < 3) {
    throw RangeError("n_sites", "tail-block prediction needs n_sites >= 3");
  }
  const Matrix2 u = build_unitary(params.unitary());
  const Complex u21 = u(1, 0);
  const Complex u22 = u(1, 1);
  const double far = state.at(n - 2, n - 2).real();
  const double near = state.at(n - 1, n - 1).real();
  const Complex coherence = state.at(n - 2, n - 1);
  const double hop = std::norm(u21);
  return hop * (hop * far + std::norm(u22) * near +
                2.0 * (u21 * std::conj(u22) * coherence).real());
}

RunHooks absorption_hooks(const ReceptorConfig& receptor, RunRecord& record,
                          const RunOptions& options) {
  auto measure = [receptor, &record, options](SectorState& state, long time) {
    const double before = state.trace();
    const MeasurementOutcome outcome =
        measure_and_condition(state, receptor.site);
    RunEvent event;
    event.time = time;
    event.rho_rr = outcome.weight;
    event.p_abs_inst = before > kExhaustedTrace ? outcome.weight / before : 0.0;
    event.trace = state.trace();
    event.p_tot = 1.0 - event.trace;
    record.events.push_back(event);
    if (options.check_invariants) state.check_invariants(options.check_psd);
  };

  RunHooks hooks;
  if (receptor.granularity == Granularity::per_step) {
    hooks.after_step = [measure, period = receptor.period](
                           SectorState& state, const Tick& tick) {
      if (tick.step % period == 0) measure(state, tick.step);
    };
  } else {
    hooks.after_pass = [measure, period = receptor.period](
                           SectorState& state, const Tick& tick) {
      if (tick.tick % period == 0) measure(state, tick.tick);
    };
  }
  return hooks;
}

RunRecord simulate_absorption(const LatticeConfig& lattice,
                              const ReceptorConfig& receptor,
                              int initial_site, int t_steps,
                              const RunOptions& options) {
  const Automaton automaton(lattice);
  receptor.validate(lattice.n_sites);
  SectorState state = SectorState::basis(lattice.n_sites, initial_site);

  RunRecord record;
  RunEvent start;
  start.trace = state.trace();
  start.p_tot = 1.0 - start.trace;
  record.events.push_back(start);

  automaton.run(std::move(state), t_steps,
                absorption_hooks(receptor, record, options));
  return record;
}

}  // namespace nqca
