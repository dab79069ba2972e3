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

#include "pcurv/charpoly.hpp"

#include "pcurv/sampling.hpp"

#include <cmath>
#include <string>

namespace pcurv {

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kAuto: return "auto";
    case Strategy::kSymbolic: return "symbolic";
    case Strategy::kSampled: return "sampled";
  }
  return "auto";
}

Strategy parse_strategy(const std::string& s) {
  if (s == "auto") return Strategy::kAuto;
  if (s == "symbolic") return Strategy::kSymbolic;
  if (s == "sampled") return Strategy::kSampled;
  throw std::invalid_argument("unknown strategy '" + s + "' (expected symbolic|sampled|auto)");
}

std::size_t sampled_rounds(std::size_t d, std::uint64_t q) {
  if (d == 0) return 1;
  if (q <= d) return 0;
  const double per_round = std::log2(static_cast<double>(q) / static_cast<double>(d));
  return static_cast<std::size_t>(std::floor(30.0 / per_round)) + 1;
}

namespace {

template <class R>
void check_commuting(const std::vector<Matrix<R>>& L, const char* which) {
  for (std::size_t i = 0; i < L.size(); ++i) {
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      if (!commutator(L[i], L[j]).is_zero()) {
        throw NonCommutingError(std::string("pencil_isospectral: ") + which + "[" +
                                std::to_string(i) + "] and " + which + "[" +
                                std::to_string(j) + "] do not commute");
      }
    }
  }
}

template <class R>
Matrix<R> combine(const std::vector<Matrix<R>>& L, const std::vector<typename R::Elem>& u) {
  const R& ring = L.front().ring();
  Matrix<R> acc(ring, L.front().size());
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (ring.is_zero(u[i])) continue;
    acc = acc + L[i].scale(u[i]);
  }
  return acc;
}

template <class R>
PencilCheck pencil_impl(const std::vector<Matrix<R>>& L, const std::vector<Matrix<R>>& M,
                        Strategy strategy, std::mt19937_64& rng) {
  if (L.size() != M.size()) throw std::invalid_argument("pencil_isospectral: list lengths differ");
  PencilCheck out;
  if (L.empty()) {
    out.isospectral = true;
    return out;
  }
  const std::size_t n = L.front().size();
  for (const auto& list : {&L, &M}) {
    for (const auto& m : *list) {
      if (m.size() != n) throw std::invalid_argument("pencil_isospectral: size mismatch");
    }
  }
  check_commuting(L, "L");
  check_commuting(M, "M");

  const R& ring = L.front().ring();
  const Context& ctx = *ring.C;
  const std::size_t r = L.size();
  if (strategy == Strategy::kAuto) strategy = (n * r > 8) ? Strategy::kSampled : Strategy::kSymbolic;
  // The char-poly difference has degree at most n in u.
  std::size_t rounds = 0;
  if (strategy == Strategy::kSampled) {
    rounds = sampled_rounds(n, ctx.p());
    if (rounds == 0) strategy = Strategy::kSymbolic;
  }
  out.used = strategy;

  auto run = [&](const std::vector<typename R::Elem>& u) {
    auto a = char_poly(combine(L, u));
    auto b = char_poly(combine(M, u));
    if (charpoly_equal(ring, a, b)) return true;
    out.lhs_charpoly = serialize_charpoly(ring, a);
    out.rhs_charpoly = serialize_charpoly(ring, b);
    return false;
  };

  if (strategy == Strategy::kSymbolic) {
    std::vector<typename R::Elem> u;
    for (std::size_t i = 0; i < r; ++i) u.push_back(typename R::Elem(ctx.poly_var("u" + std::to_string(i + 1))));
    out.u_samples = 0;
    out.isospectral = run(u);
    return out;
  }

  out.u_samples = rounds;
  out.log2_failure_bound =
      -static_cast<double>(rounds) * std::log2(static_cast<double>(ctx.p()) / static_cast<double>(n));
  for (std::size_t k = 0; k < rounds; ++k) {
    std::vector<typename R::Elem> u;
    for (std::size_t i = 0; i < r; ++i) u.push_back(ring.from_fp(draw_residue(rng, ctx.p())));
    if (!run(u)) {
      out.isospectral = false;
      return out;
    }
  }
  out.isospectral = true;
  return out;
}

}  // namespace

PencilCheck pencil_isospectral(const std::vector<PolyMatrix>& L, const std::vector<PolyMatrix>& M,
                               Strategy strategy, std::mt19937_64& rng) {
  return pencil_impl(L, M, strategy, rng);
}

PencilCheck pencil_isospectral(const std::vector<RatMatrix>& L, const std::vector<RatMatrix>& M,
                               Strategy strategy, std::mt19937_64& rng) {
  return pencil_impl(L, M, strategy, rng);
}

}  // namespace pcurv
