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

#include "nqca/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <random>

#include "nqca/classical_oracle.hpp"
#include "nqca/measurement.hpp"
#include "nqca/qchannel.hpp"

namespace nqca {
namespace {

std::string worst(double value) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "max deviation %.3e", value);
  return buf;
}

CheckResult run_check(const std::string& name, double tolerance,
                      const std::function<double()>& body) {
  try {
    const double deviation = body();
    return {name, deviation < tolerance, worst(deviation)};
  } catch (const std::exception& e) {
    return {name, false, e.what()};
  }
}

}  // namespace

std::vector<CheckResult> run_selfcheck(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<CheckResult> results;

  results.push_back(run_check("stochastic embedding identity", 1e-12, [&] {
    double dev = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const StochasticMatrix2 t(unit(rng), unit(rng));
      const DiagState2 v(unit(rng));
      dev = std::max(dev, std::abs(embedded_apply(t, v).m() -
                                   stochastic_apply(t, v).m()));
    }
    return dev;
  }));

  results.push_back(run_check("dephased unitary identity", 1e-12, [&] {
    double dev = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const UnitaryParams u(std::numbers::pi * unit(rng),
                            2 * std::numbers::pi * unit(rng),
                            2 * std::numbers::pi * unit(rng));
      const DiagState2 v(unit(rng));
      const Matrix2 w = build_unitary(u);
      const Matrix2 out = dephase_2d(w * v.density() * w.adjoint(), 1.0);
      const double s = std::sin(u.theta());
      const double expected = s * s + std::cos(2 * u.theta()) * v.m();
      dev = std::max({dev, std::abs(out(0, 0).real() - expected),
                      std::abs(out(0, 1))});
    }
    return dev;
  }));

  results.push_back(run_check("kraus completeness", 1e-12, [&] {
    double dev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Matrix2 sum = Matrix2::Zero();
      for (const Matrix2& k : dephasing_kraus(unit(rng))) sum += k.adjoint() * k;
      dev = std::max(dev, (sum - Matrix2::Identity()).cwiseAbs().maxCoeff());
      sum.setZero();
      for (const Matrix2& k : damping_kraus(2 * unit(rng) - 1)) sum += k.adjoint() * k;
      dev = std::max(dev, (sum - Matrix2::Identity()).cwiseAbs().maxCoeff());
    }
    return dev;
  }));

  results.push_back(run_check("classical oracle equivalence", 1e-12, [&] {
    double dev = 0.0;
    const double grid[] = {0.0, 0.25, 0.5, 0.7, 1.0};
    for (int n : {2, 3, 8, 16}) {
      for (double p : grid) {
        for (double q : grid) {
          const StochasticMatrix2 t(p, q);
          LatticeConfig lattice;
          lattice.n_sites = n;
          lattice.params = classical_to_channel(t).with(1.0);
          const ReceptorConfig receptor{n, 1, Granularity::per_step};
          const RunRecord quantum = simulate_absorption(lattice, receptor, 1, 150);
          const RunRecord classical =
              simulate_classical(schedule(lattice), n, t, receptor, 1, 150);
          for (std::size_t e = 0; e < quantum.events.size(); ++e) {
            dev = std::max(dev, std::abs(quantum.events[e].p_tot -
                                         classical.events[e].p_tot));
          }
        }
      }
    }
    return dev;
  }));

  results.push_back(run_check("trace preservation", 1e-12, [&] {
    const StochasticMatrix2 t(unit(rng), unit(rng));
    LatticeConfig lattice;
    lattice.n_sites = 64;
    lattice.params = classical_to_channel(t).with(unit(rng), 2 * unit(rng), unit(rng));
    const Automaton automaton(lattice);
    SectorState state = SectorState::basis(64, 1);
    double dev = 0.0;
    for (int s = 0; s < 200; ++s) {
      automaton.step(state);
      dev = std::max(dev, std::abs(state.trace() - 1.0));
    }
    return dev;
  }));

  results.push_back(run_check("absorption bookkeeping", 1e-12, [&] {
    LatticeConfig lattice;
    lattice.n_sites = 16;
    lattice.params = classical_to_channel({0.6, 0.4}).with(0.1, std::numbers::pi);
    const RunRecord record = simulate_absorption(
        lattice, {16, 1, Granularity::per_step}, 1, 200);
    const std::vector<double> recursion = integrated_probability(record);
    double dev = 0.0;
    for (std::size_t e = 0; e < recursion.size(); ++e) {
      dev = std::max(dev, std::abs(recursion[e] - (1.0 - record.events[e].trace)));
    }
    return dev;
  }));

  return results;
}

}  // namespace nqca
