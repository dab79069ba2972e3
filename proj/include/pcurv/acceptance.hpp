// Copyright 2026 The pcurv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pcurv {

struct AcOutcome {
  bool pass = false;
  // Deterministic one-line summary of what was checked.
  std::string detail;
};

struct AcEntry {
  std::string id;  // "AC-1" .. "AC-13"
  std::string title;
  std::function<AcOutcome(std::uint64_t seed)> run;
};

// The full acceptance matrix in order.
const std::vector<AcEntry>& acceptance_matrix();

// Ids for "quick" or "full"; throws std::invalid_argument otherwise.
std::vector<std::string> suite_profile(const std::string& profile);

// Runs one entry, converting an escaped exception into a failure.
AcOutcome run_acceptance(const AcEntry& entry, std::uint64_t seed);

}  // namespace pcurv
