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

#include <cstdint>
#include <string>
#include <vector>

namespace nqca {

inline constexpr std::uint64_t kSelfcheckSeed = 0x5eed2013;

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant suite: embedding identities, oracle equivalence, trace
/// preservation, absorption bookkeeping. Deterministic for a given seed.
std::vector<CheckResult> run_selfcheck(std::uint64_t seed = kSelfcheckSeed);

}  // namespace nqca
