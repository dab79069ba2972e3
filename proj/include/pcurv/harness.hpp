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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcurv/charpoly.hpp"
#include "pcurv/sampling.hpp"

namespace pcurv {

inline constexpr const char* kToolName = "pcurv";
const char* tool_version();

// Invalid model, prime or flag combination; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitConfig = 2, kExitDegenerate = 3 };

// Largest accepted prime; exponents are stored in 16 bits.
inline constexpr std::uint32_t kMaxPrime = 1000;

struct HarnessConfig {
  std::string model;
  // Empty: the model's pinned primes.
  std::vector<std::uint32_t> primes;
  // Only for qkz; 0 picks the pinned ell for p, else the least prime = 1 mod p.
  std::uint32_t ell = 0;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  // Tensor factors V(m_1)..V(m_r) for the sl2 models.
  std::vector<unsigned> reps;
  // Group size for gaudin-sn and cm-identity; 0 picks 2.
  std::size_t n = 0;
  Strategy strategy = Strategy::kAuto;
  // Named values substituted before printing; compute only.
  std::vector<std::pair<std::string, std::uint32_t>> assignments;
};

// A named deterministic check outside the sampled records.
struct Check {
  std::string name;
  std::string value;
  bool pass = false;
};

struct RunReport {
  std::uint32_t p = 0;
  std::uint32_t ell = 0;  // 0 unless the model works over F_ell
  std::vector<SampleRecord> samples;
  std::vector<Check> checks;
  bool degenerate = false;
  std::size_t passed() const;
  std::size_t failed() const;
};

struct VerificationReport {
  HarnessConfig config;  // with defaults resolved
  std::vector<RunReport> runs;
  std::size_t passed() const;
  std::size_t failed() const;
  bool degenerate() const;
  int exit_code() const;
};

struct NamedMatrix {
  std::string name;
  std::vector<std::vector<std::string>> rows;
};

struct ComputeResult {
  HarnessConfig config;
  std::uint32_t p = 0;
  std::uint32_t ell = 0;
  std::vector<NamedMatrix> matrices;
};

// Fills defaults and validates; throws ConfigError with the model's prime
// constraint on a bad combination.
HarnessConfig resolve_config(const HarnessConfig& in);

// Least prime ell = 1 mod p, or the pinned partner of p.
std::uint32_t default_ell(std::uint32_t p);

VerificationReport verify_model(const HarnessConfig& config);
// Uses the first resolved prime.
ComputeResult compute_model(const HarnessConfig& config);

std::string render_text(const VerificationReport& r);
std::string render_json(const VerificationReport& r);
std::string render_text(const ComputeResult& r);
std::string render_json(const ComputeResult& r);

}  // namespace pcurv
