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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nqca/experiments.hpp"
#include "nqca/measurement.hpp"

namespace nqca {

inline constexpr std::string_view kRunCsvHeader =
    "step,rho_rr,p_abs_inst,p_tot,trace";

/// Values are written with 17 significant digits so they parse back exactly.
void write_run_csv(std::ostream& out, const RunRecord& record);
RunRecord read_run_csv(std::istream& in);

/// Static line plot of P_tot against time, one polyline per series.
void write_svg(std::ostream& out, const std::vector<SeriesResult>& series,
               std::string_view title);

struct EmitOptions {
  bool svg = false;
};

/// Writes <name>_<label>.csv per series and <name>_index.csv listing them,
/// plus <name>.svg when requested. Returns the written paths.
std::vector<std::filesystem::path> emit(const std::vector<SeriesResult>& series,
                                        const std::filesystem::path& out_dir,
                                        const std::string& name,
                                        const EmitOptions& options = {});

}  // namespace nqca
