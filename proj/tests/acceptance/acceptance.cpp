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

// Acceptance checks: one PASS/FAIL line per criterion. Tolerances are fixed
// below; runtime limits are part of the verdict where one is stated.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "nqca/automaton.hpp"
#include "nqca/classical_oracle.hpp"
#include "nqca/experiments.hpp"
#include "nqca/measurement.hpp"
#include "nqca/qchannel.hpp"
#include "nqca/sector_state.hpp"

namespace {

using namespace nqca;

constexpr double kPi = std::numbers::pi;
constexpr double kExact = 1e-12;

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

LatticeConfig chain(int n, Topology topo, double p, double q, double xi,
                    double phi1, double phi2) {
  LatticeConfig c;
  c.n_sites = n;
  c.topology = topo;
  c.params = classical_to_channel({p, q}).with(xi, phi1, phi2);
  return c;
}

ReceptorConfig receptor_for(int n, Topology topo) {
  ReceptorConfig r;
  r.site = ReceptorConfig::default_site(n, topo);
  return r;
}

std::vector<double> p_tot_series(int n, Topology topo, double p, double q, double xi,
                                 double phi1, double phi2, int t_max) {
  return simulate_absorption(chain(n, topo, p, q, xi, phi1, phi2), receptor_for(n, topo), 1,
                             t_max)
      .p_tot();
}

// 1. Embedding identities on 10^4 random samples.
Verdict propositions() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(0, 1);
  double dev2 = 0, dev1 = 0;
  for (int i = 0; i < 10000; ++i) {
    const StochasticMatrix2 t(u(rng), u(rng));
    const DiagState2 v(u(rng));
    dev2 = std::max(dev2, std::abs(embedded_apply(t, v).m() - stochastic_apply(t, v).m()));

    const UnitaryParams params(kPi * u(rng), 2 * kPi * u(rng), 2 * kPi * u(rng));
    const double m = u(rng);
    const Matrix2 w = build_unitary(params);
    const Matrix2 out = dephase_2d(w * DiagState2(m).density() * w.adjoint(), 1.0);
    const double s = std::sin(params.theta());
    dev1 = std::max({dev1, std::abs(out(0, 0).real() - (s * s + std::cos(2 * params.theta()) * m)),
                     std::abs(out(0, 1)), std::abs(out(1, 1).real() + out(0, 0).real() - 1)});
  }
  return {dev1 < kExact && dev2 < kExact,
          fmt("max deviation: unitary+dephasing %.2e, damping embedding %.2e", dev1, dev2)};
}

// 2. Dephased automaton with measurement against the classical chain.
Verdict classical_equivalence() {
  const std::vector<double> grid{0.0, 0.25, 0.5, 0.7, 1.0};
  double worst = 0;
  int runs = 0;
  for (int n : {2, 3, 8, 16}) {
    for (double p : grid) {
      for (double q : grid) {
        const LatticeConfig c = chain(n, Topology::open, p, q, 1.0, 0.3, 0.9);
        const Automaton a(c);
        SectorState qs = SectorState::basis(n, 1);
        ClassicalState cs = ClassicalState::basis(n, 1);
        for (int t = 1; t <= 300; ++t) {
          a.step(qs);
          classical_step(cs, a.passes(), {p, q});
          worst = std::max(worst, std::abs(measure_and_condition(qs, n).weight -
                                           classical_measure(cs, n)));
          for (int k = 1; k <= n; ++k) {
            worst = std::max(worst, std::abs(qs.population(k) - cs[k]));
          }
          worst = std::max(worst, qs.max_offdiagonal());
        }
        ++runs;
      }
    }
  }
  return {worst < kExact, fmt("%d runs x 300 steps, max entry deviation %.2e", runs, worst)};
}

// 3. Trace conservation and conditioning bookkeeping.
Verdict conservation() {
  const LatticeConfig c = chain(64, Topology::open, 0.7, 0.5, 0.3, 1.0, 0.5);
  const Automaton a(c);
  SectorState s = SectorState::basis(64, 1);
  double drift = 0;
  for (int t = 0; t < 1000; ++t) {
    a.step(s);
    drift = std::max(drift, std::abs(s.trace() - 1.0));
  }
  double book = 0;
  for (double xi : {0.0, 0.05, 1.0}) {
    const RunRecord rec = simulate_absorption(chain(64, Topology::open, 0.5, 0.5, xi, kPi, 0),
                                              receptor_for(64, Topology::open), 1, 1000);
    const std::vector<double> recursion = integrated_probability(rec);
    for (std::size_t k = 0; k < rec.events.size(); ++k) {
      book = std::max(book, std::abs((1.0 - rec.events[k].trace) - recursion[k]));
    }
  }
  return {drift < kExact && book < kExact,
          fmt("trace drift over 1000 steps %.2e, 1 - trace vs product recursion %.2e", drift,
              book)};
}

// 4. Tail-block prediction along a coherent run.
Verdict tail_prediction() {
  const LatticeConfig c = chain(64, Topology::open, 0.5, 0.5, 0.0, kPi, 0.0);
  ReceptorConfig r = receptor_for(64, Topology::open);
  RunRecord rec;
  RunHooks measure = absorption_hooks(r, rec);
  double predicted = 0, worst = 0;
  int checked = 0;
  RunHooks hooks;
  hooks.after_step = [&](SectorState& s, const Tick& t) {
    const double tr = s.trace();
    if (tr > 0) {
      worst = std::max(worst, std::abs(s.population(64) - predicted) / tr);
      ++checked;
    }
    measure.after_step(s, t);
    predicted = predict_next_absorption(s, c.params);
  };
  Automaton(c).run(SectorState::basis(64, 1), 400, hooks);
  return {worst < kExact && checked == 400,
          fmt("%d steps, max |predicted - simulated| (normalised) %.2e", checked, worst)};
}

// 5. Only phi1 + phi2 matters.
Verdict phase_sum() {
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> u(0, 1);
  const double phi1 = 0.8, phi2 = 2.1;
  const std::vector<double> ref = p_tot_series(64, Topology::open, 0.7, 0.5, 0.0, phi1, phi2, 300);
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const double delta = 4 * kPi * u(rng) - 2 * kPi;
    const std::vector<double> moved =
        p_tot_series(64, Topology::open, 0.7, 0.5, 0.0, phi1 + delta, phi2 - delta, 300);
    for (std::size_t k = 0; k < ref.size(); ++k) worst = std::max(worst, std::abs(ref[k] - moved[k]));
  }
  return {worst < kExact, fmt("10 random shifts, max P_tot deviation %.2e", worst)};
}

// 6. Early coherent lead, then the dephased curve ahead before saturation.
Verdict fig1() {
  constexpr int kHorizon = 1000;
  constexpr double kSaturated = 1 - 1e-9;
  const auto q0 = p_tot_series(64, Topology::open, 0.7, 0.5, 0.0, kPi, 0.0, kHorizon);
  const auto q1 = p_tot_series(64, Topology::open, 0.7, 0.5, 1.0, kPi, 0.0, kHorizon);
  double lead = -1;
  long lead_at = 0;
  for (std::size_t t = 0; t < q0.size(); ++t) {
    if (q0[t] - q1[t] > lead) {
      lead = q0[t] - q1[t];
      lead_at = static_cast<long>(t);
    }
  }
  // Last step at which the two curves are not both saturated.
  long last = -1;
  for (std::size_t t = 0; t < q0.size(); ++t) {
    if (q0[t] < kSaturated || q1[t] < kSaturated) last = static_cast<long>(t);
  }
  long classical_ahead = 0;
  for (std::size_t t = 0; t < q0.size(); ++t) classical_ahead += q1[t] - q0[t] > kExact;
  const bool early = lead > 0.1;
  const bool late = last >= 0 && q1[last] > q0[last];
  return {early && late,
          fmt("max P(xi=0) - P(xi=1) = %.3f at t=%ld; last unsaturated t=%ld: P(xi=1)=%.9f "
              "P(xi=0)=%.9f; steps with xi=1 ahead by > 1e-12: %ld",
              lead, lead_at, last, last >= 0 ? q1[last] : 0.0, last >= 0 ? q0[last] : 0.0,
              classical_ahead)};
}

// Steps t < 400, after absorption has begun, with instantaneous absorption
// below 1e-6 and P_tot < 0.9.
std::vector<long> stationary_steps(double xi) {
  const RunRecord rec = simulate_absorption(chain(64, Topology::open, 0.5, 0.5, xi, kPi, 0.0),
                                            receptor_for(64, Topology::open), 1, 399);
  std::vector<long> out;
  bool started = false;
  for (const RunEvent& e : rec.events) {
    if (e.time == 0) continue;
    if (started && e.p_abs_inst < 1e-6 && e.p_tot < 0.9) out.push_back(e.time);
    started = started || e.p_tot > 1e-3;
  }
  return out;
}

// 7. Stationary points of the coherent curve vanish with dephasing.
Verdict fig2a() {
  const std::vector<long> coherent = stationary_steps(0.0);
  const std::vector<long> dephased = stationary_steps(0.05);
  std::string first;
  for (std::size_t i = 0; i < std::min<std::size_t>(coherent.size(), 4); ++i) {
    first += (i ? "," : "") + std::to_string(coherent[i]);
  }
  return {coherent.size() >= 2 && dephased.empty(),
          fmt("xi=0: %zu stationary steps (first %s); xi=0.05: %zu", coherent.size(),
              first.c_str(), dephased.size())};
}

// 8. Intermediate dephasing beats both extremes at some step.
Verdict fig2b() {
  constexpr int kHorizon = 1000;
  const auto q0 = p_tot_series(64, Topology::open, 0.5, 0.5, 0.0, 0.0, 0.0, kHorizon);
  const auto qm = p_tot_series(64, Topology::open, 0.5, 0.5, 0.05, 0.0, 0.0, kHorizon);
  const auto q1 = p_tot_series(64, Topology::open, 0.5, 0.5, 1.0, 0.0, 0.0, kHorizon);
  double margin = -1;
  long at = -1;
  for (std::size_t t = 1; t < q0.size(); ++t) {
    const double m = qm[t] - std::max(q0[t], q1[t]);
    if (m > margin) {
      margin = m;
      at = static_cast<long>(t);
    }
  }
  return {margin > kExact, fmt("max_t P(0.05) - max(P(0), P(1)) = %.3e at t=%ld; P at t=%d: "
                          "xi=0 %.4f, xi=0.05 %.4f, xi=1 %.4f",
                          margin, at, kHorizon, q0.back(), qm.back(), q1.back())};
}

// 9. Classical overtakes the coherent ring walk within 70 steps.
Verdict fig3b() {
  constexpr int n = 18;
  const ReceptorConfig r = receptor_for(n, Topology::ring);
  const LatticeConfig c = chain(n, Topology::ring, 0.5, 0.5, 0.0, 0.0, 0.0);
  const std::vector<double> quantum = simulate_absorption(c, r, 1, 300).p_tot();
  const std::vector<double> classical =
      simulate_classical(schedule(c), n, {0.5, 0.5}, r, 1, 300).p_tot();
  const long cross = crossover_step(classical, quantum);
  double q_max = 0;
  for (double v : quantum) q_max = std::max(q_max, v);
  return {cross >= 0 && cross <= 70,
          fmt("first t with classical >= quantum after a quantum lead: %ld (-1: never); "
              "max quantum P_tot over 300 steps %.3e, classical P_tot(70) %.4f",
              cross, q_max, classical[70])};
}

// 10. p = 1 is ballistic: certain arrival at a pass count independent of xi.
Verdict ballistic() {
  bool ok = true;
  std::string detail;
  for (int n : {3, 8, 64}) {
    for (double q : {0.0, 1.0}) {
      long arrival = -2;
      for (double xi : {0.0, 0.5, 1.0}) {
        ReceptorConfig r;
        r.site = n;
        r.granularity = Granularity::per_pass;
        const RunRecord rec =
            simulate_absorption(chain(n, Topology::open, 1.0, q, xi, 0.0, 0.0), r, 1, n + 2);
        long first = -1;
        for (const RunEvent& e : rec.events) {
          if (e.p_tot >= 1 - kExact) {
            first = e.time;
            break;
          }
        }
        if (first < 0 || (arrival != -2 && first != arrival)) ok = false;
        if (arrival == -2) arrival = first;
      }
      detail += fmt("%sN=%d q=%g: %ld passes", detail.empty() ? "" : ", ", n, q, arrival);
    }
  }
  return {ok, detail};
}

struct Criterion {
  const char* name;
  std::function<Verdict()> check;
  double time_limit;  // seconds; 0 for none
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"proposition identities", propositions, 1.0},
      {"classical oracle equivalence", classical_equivalence, 10.0},
      {"conservation and conditioning", conservation, 0.0},
      {"tail-block absorption prediction", tail_prediction, 0.0},
      {"phase-sum invariance", phase_sum, 0.0},
      {"fig1 early boost and late classical lead", fig1, 5.0},
      {"fig2a stationarity", fig2a, 0.0},
      {"fig2b dephasing assistance", fig2b, 0.0},
      {"fig3b crossover within 70 steps", fig3b, 0.0},
      {"ballistic limit", ballistic, 0.0},
  };

  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::fprintf(stderr, "--only expects 1..%zu\n", criteria.size());
    return 2;
  }

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const Criterion& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      v.passed = false;
      v.detail += fmt(" [over time limit %.0f s]", c.time_limit);
    }
    std::printf("%s  %2zu  %-42s %.2fs  %s\n", v.passed ? "PASS" : "FAIL", i + 1, c.name, secs,
                v.detail.c_str());
    failed += !v.passed;
  }
  return failed == 0 ? 0 : 1;
}
