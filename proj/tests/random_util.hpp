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

#include <random>
#include <string>
#include <vector>

#include "pcurv/matrix.hpp"

namespace pcurv::testing {

// Random polynomial in the listed variables, at most `terms` terms of total
// degree at most `deg`.
inline MultiPoly random_poly(const Context& ctx, const std::vector<int>& vars, int deg, int terms,
                             std::mt19937_64& rng) {
  std::uniform_int_distribution<int> ed(0, deg);
  std::uniform_int_distribution<std::uint32_t> cd(1, ctx.p() - 1);
  std::vector<MultiPoly::Term> ts;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    int budget = ed(rng);
    for (int v : vars) {
      if (budget == 0) break;
      std::uniform_int_distribution<int> k(0, budget);
      int e = k(rng);
      m.e[v] = static_cast<std::uint16_t>(e);
      m.deg += e;
      budget -= e;
    }
    ts.push_back({m, cd(rng)});
  }
  return MultiPoly::from_terms(ctx, ts);
}

inline FpMatrix random_fp_matrix(const PrimeField& F, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, F.modulus() - 1);
  FpMatrix m(FieldRing{&F}, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

inline FpMatrix random_invertible(const PrimeField& F, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    auto g = random_fp_matrix(F, n, rng);
    if (rank(g) == n) return g;
  }
}

}  // namespace pcurv::testing
