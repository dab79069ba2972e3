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
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace pcurv {

// Pinned generator: std::mt19937_64 seeded through std::seed_seq from
// (seed, prime, sample index). Both are fully specified by the standard, so
// sample streams agree across platforms.
std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t prime, std::uint64_t index);

// Uniform residue in [lo, p).
std::uint32_t draw_residue(std::mt19937_64& rng, std::uint32_t p, std::uint32_t lo = 0);

// Worker count from PCURV_THREADS, clamped to [1, hardware concurrency];
// 1 when unset or unparsable.
std::size_t thread_budget();

// Runs body(i) for i in [0, n) on up to thread_budget() threads. The first
// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Outcome of one sample of an isospectrality check.
struct SampleRecord {
  std::size_t index = 0;
  std::vector<std::pair<std::string, std::uint32_t>> point;
  bool pass = false;
  std::size_t resamples = 0;
  std::string strategy;
  std::size_t u_samples = 0;
  double log2_failure_bound = 0.0;
  std::vector<std::string> lhs_charpoly, rhs_charpoly;
  std::string note;
};

struct SampleReport {
  std::vector<SampleRecord> samples;
  bool degenerate = false;  // resampling budget exhausted
  std::size_t passed() const;
  std::size_t failed() const;
  bool all_pass() const { return !degenerate && failed() == 0; }
};

inline constexpr std::size_t kMaxResamples = 100;

}  // namespace pcurv
