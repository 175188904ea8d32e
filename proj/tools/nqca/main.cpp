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

// nqca: run figure scenarios, parameter sweeps, the grid optimiser, and the
// built-in invariant self-check.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nqca/config.hpp"
#include "nqca/emit.hpp"
#include "nqca/error.hpp"
#include "nqca/experiments.hpp"
#include "nqca/selfcheck.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kConfigInvalid = 2,
  kIoFailed = 3,
  kInternal = 4,
};

struct Options {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  bool svg = false;
  int threads = 1;
  bool debug_psd = false;
};

nqca::KeyValueConfig load(const Options& opts) {
  nqca::KeyValueConfig config = nqca::KeyValueConfig::load(opts.config_path);
  for (const std::string& assignment : opts.overrides) {
    config.apply_override(assignment);
  }
  return config;
}

std::ofstream open_file(const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw nqca::IoError(path.string(), "cannot open for writing");
  return out;
}

int cmd_run(const Options& opts) {
  const nqca::Scenario scenario = nqca::Scenario::from_config(load(opts));
  nqca::RunOptions run_options;
  run_options.check_psd = opts.debug_psd;
  const auto series = nqca::run_scenario(scenario, run_options);
  const auto paths = nqca::emit(series, opts.out_dir, scenario.name,
                                nqca::EmitOptions{opts.svg});
  for (const auto& s : series) {
    std::printf("%-20s P_tot(t=%ld) = %.12f\n", s.label().c_str(),
                s.record.events.back().time, s.record.events.back().p_tot);
  }
  for (const auto& path : paths) std::printf("wrote %s\n", path.c_str());
  return kOk;
}

nqca::SweepGrid load_grid(const Options& opts, const char* kind) {
  nqca::KeyValueConfig config = load(opts);
  if (config.text("kind") != kind) {
    throw nqca::ConfigError("kind", opts.config_path + ": expected kind = " +
                                        kind + ", got " + config.text("kind"));
  }
  return nqca::SweepGrid::from_config(config);
}

int cmd_sweep(const Options& opts) {
  const nqca::SweepGrid grid = load_grid(opts, "sweep");
  const nqca::SweepTable table = nqca::sweep(grid, opts.threads);
  const auto path =
      std::filesystem::path(opts.out_dir) / (grid.base.name + "_sweep.csv");
  std::ofstream out = open_file(path);
  table.write_csv(out);
  out.close();
  if (!out) throw nqca::IoError(path.string(), "write failed");
  std::printf("%zu cells, wrote %s\n", table.rows.size(), path.c_str());
  return kOk;
}

int cmd_optimize(const Options& opts) {
  const nqca::SweepGrid grid = load_grid(opts, "optimize");
  const nqca::OptimizeResult result = nqca::optimize(grid, opts.threads);
  const std::string& axis = grid.axes.front().name;
  const auto path =
      std::filesystem::path(opts.out_dir) / (grid.base.name + "_optimize.csv");
  std::ofstream out = open_file(path);
  out << axis << ',' << nqca::to_string(grid.reducer) << '\n';
  char buf[80];
  for (const auto& [value, objective] : result.evaluations) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", value, objective);
    out << buf;
  }
  out.close();
  if (!out) throw nqca::IoError(path.string(), "write failed");
  std::printf("best %s = %g (objective %.12f), wrote %s\n", axis.c_str(),
              result.best_value, result.best_objective, path.c_str());
  return kOk;
}

int cmd_selfcheck() {
  bool all = true;
  for (const nqca::CheckResult& r : nqca::run_selfcheck()) {
    std::printf("%s  %-32s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all = all && r.passed;
  }
  std::printf("selfcheck %s (seed 0x%llx)\n", all ? "passed" : "FAILED",
              static_cast<unsigned long long>(nqca::kSelfcheckSeed));
  return all ? kOk : kCheckFailed;
}

void add_config_options(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config_path, "Scenario or sweep file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--override", opts.overrides,
                  "Replace a key from the config file (key=value, repeatable)");
  cmd->add_option("--out", opts.out_dir, "Output directory")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noisy partitioned quantum cellular automaton simulator"};
  app.require_subcommand(1);
  Options opts;

  CLI::App* run = app.add_subcommand("run", "Run a single scenario");
  add_config_options(run, opts);
  run->add_flag("--svg", opts.svg, "Also write an SVG plot of P_tot");
  run->add_flag("--debug-psd", opts.debug_psd,
                "Check positivity of the state at every measurement (slow)");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  add_config_options(sweep, opts);
  sweep->add_option("--threads", opts.threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  CLI::App* optimize =
      app.add_subcommand("optimize", "Grid search over one parameter");
  add_config_options(optimize, opts);
  optimize->add_option("--threads", opts.threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  CLI::App* selfcheck =
      app.add_subcommand("selfcheck", "Run the built-in invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(opts);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (optimize->parsed()) return cmd_optimize(opts);
    if (selfcheck->parsed()) return cmd_selfcheck();
  } catch (const nqca::RangeError& e) {
    std::fprintf(stderr, "error: invalid '%s': %s\n", e.field().c_str(), e.what());
    return kConfigInvalid;
  } catch (const nqca::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigInvalid;
  } catch (const nqca::BudgetExceeded& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigInvalid;
  } catch (const nqca::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoFailed;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInternal;
  }
  return kInternal;
}
