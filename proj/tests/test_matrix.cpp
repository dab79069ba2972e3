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

#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "pcurv/charpoly.hpp"
#include "random_util.hpp"

using namespace pcurv;
using pcurv::testing::random_fp_matrix;
using pcurv::testing::random_invertible;

namespace {

// det(L*I - M) over F_p[L] by the Leibniz formula; oracle for small N.
std::vector<Fp> leibniz_charpoly(const FpMatrix& M) {
  const PrimeField& F = *M.ring().F;
  const std::size_t n = M.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Fp> total(n + 1, 0);
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    std::vector<Fp> prod{1};
    for (std::size_t i = 0; i < n; ++i) {
      // entry (i, perm[i]) of L*I - M as a polynomial in L
      std::vector<Fp> e{F.neg(M(i, perm[i]))};
      if (perm[i] == i) e.push_back(1);
      std::vector<Fp> next(prod.size() + e.size() - 1, 0);
      for (std::size_t a = 0; a < prod.size(); ++a)
        for (std::size_t b = 0; b < e.size(); ++b)
          next[a + b] = F.add(next[a + b], F.mul(prod[a], e[b]));
      prod = next;
    }
    for (std::size_t k = 0; k < prod.size(); ++k)
      total[k] = (inversions % 2) ? F.sub(total[k], prod[k]) : F.add(total[k], prod[k]);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Fp leibniz_det(const FpMatrix& M) {
  auto cp = leibniz_charpoly(M);
  const PrimeField& F = *M.ring().F;
  return (M.size() % 2) ? F.neg(cp[0]) : cp[0];
}

}  // namespace

TEST_CASE("char_poly small closed forms") {
  PrimeField F(7);
  FieldRing R{&F};
  auto M = FpMatrix::from_rows(R, {{0, 1}, {1, 0}});
  auto cp = char_poly(M);
  CHECK(cp == std::vector<Fp>{6, 0, 1});
}

TEST_CASE("Berkowitz agrees with the Leibniz oracle") {
  std::mt19937_64 rng(21);
  PrimeField F(7);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int t = 0; t < 100; ++t) {
      auto M = random_fp_matrix(F, n, rng);
      // Sparsify some inputs so the block split is exercised.
      if (t % 3 == 0) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            if ((i + j + t) % 2) M(i, j) = 0;
      }
      auto cp = char_poly(M);
      CHECK(cp == leibniz_charpoly(M));
      CHECK(cp.back() == 1);
      CHECK(trace_wedge(M, 0) == 1);
      Fp tr = 0;
      for (std::size_t i = 0; i < n; ++i) tr = F.add(tr, M(i, i));
      CHECK(trace_wedge(M, 1) == tr);
      CHECK(trace_wedge(M, n) == leibniz_det(M));
    }
  }
  auto M = random_fp_matrix(F, 3, rng);
  CHECK_THROWS_AS(trace_wedge(M, 4), std::out_of_range);
}

TEST_CASE("char_poly is conjugation invariant") {
  std::mt19937_64 rng(22);
  PrimeField F(11);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 2 + t % 4;
    auto M = random_fp_matrix(F, n, rng);
    auto g = random_invertible(F, n, rng);
    CHECK(g * inverse(g) == FpMatrix::identity(M.ring(), n));
    CHECK(char_poly(g * M * inverse(g)) == char_poly(M));
  }
}

TEST_CASE("nilpotence and isospectrality decisions") {
  std::mt19937_64 rng(23);
  PrimeField F(5);
  FieldRing R{&F};
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 1 + t % 5;
    auto M = random_fp_matrix(F, n, rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) M(i, j) = 0;
    CHECK(is_nilpotent(M));
    // Random nilpotent Jordan form, conjugated; power oracle M^N = 0.
    FpMatrix J(R, n);
    for (std::size_t i = 0; i + 1 < n; ++i) J(i, i + 1) = rng() % 2;
    auto g = random_invertible(F, n, rng);
    auto N = g * J * inverse(g);
    CHECK(N.pow(n).is_zero());
    CHECK(is_nilpotent(N));
    CHECK(isospectral(M, M.transpose()));
  }
  CHECK_FALSE(is_nilpotent(FpMatrix::identity(R, 3)));
  auto d12 = FpMatrix::from_rows(R, {{1, 0}, {0, 2}});
  auto d21 = FpMatrix::from_rows(R, {{2, 0}, {0, 1}});
  auto d11 = FpMatrix::from_rows(R, {{1, 0}, {0, 1}});
  CHECK(isospectral(d12, d21));
  CHECK_FALSE(isospectral(d11, d12));
  CHECK_THROWS_AS(isospectral(d11, FpMatrix::identity(R, 3)), std::invalid_argument);
}

TEST_CASE("char_poly over rational functions: n = 2 Gaudin matrix") {
  Context ctx(7, {"x", "y", "c"});
  RatRing R{&ctx};
  auto x = ctx.poly_var("x"), y = ctx.poly_var("y"), c = ctx.poly_var("c");
  auto cx = RatFunc(c, {{x, 1}});
  auto G = RatMatrix::from_rows(R, {{RatFunc(y), cx}, {cx, RatFunc(-y)}});
  auto cp = char_poly(G);
  REQUIRE(cp.size() == 3);
  CHECK(cp[2] == R.one());
  CHECK(cp[1].is_zero());
  CHECK(cp[0] == -(RatFunc(y * y) + cx * cx));
}

TEST_CASE("matrix Frobenius twist") {
  Context ctx(5, {"a", "b"});
  PolyRing R{&ctx};
  auto a = ctx.poly_var("a"), b = ctx.poly_var("b");
  auto D = PolyMatrix::from_rows(R, {{a, R.zero()}, {R.zero(), b}});
  auto T = matrix_frobenius_twist(D);
  CHECK(T == PolyMatrix::from_rows(R, {{a.pow(5), R.zero()}, {R.zero(), b.pow(5)}}));
  CHECK(matrix_frobenius_twist(PolyMatrix::identity(R, 3)) == PolyMatrix::identity(R, 3));
  std::mt19937_64 rng(1);
  PrimeField F(5);
  auto M = random_fp_matrix(F, 3, rng);
  CHECK(matrix_frobenius_twist(M) == M);
  // Companion matrix of L^2 - a L - b: twisted char poly is L^2 - a^p L - b^p.
  auto Cmp = PolyMatrix::from_rows(R, {{R.zero(), b}, {R.one(), a}});
  auto cp = char_poly(matrix_frobenius_twist(Cmp));
  CHECK(cp[0] == -b.pow(5));
  CHECK(cp[1] == -a.pow(5));
}

namespace {

// Commuting family: polynomials in one random matrix.
std::vector<FpMatrix> commuting_family(const PrimeField& F, std::size_t n, std::size_t r,
                                       std::mt19937_64& rng) {
  auto A = random_fp_matrix(F, n, rng);
  std::vector<FpMatrix> out;
  std::uniform_int_distribution<Fp> d(0, F.modulus() - 1);
  for (std::size_t i = 0; i < r; ++i) {
    FpMatrix acc(A.ring(), n), pw = FpMatrix::identity(A.ring(), n);
    for (int k = 0; k < 3; ++k) {
      acc = acc + pw.scale(d(rng));
      pw = pw * A;
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<PolyMatrix> lift(const Context& ctx, const std::vector<FpMatrix>& ms) {
  std::vector<PolyMatrix> out;
  for (const auto& m : ms) out.push_back(to_poly_matrix(ctx, m));
  return out;
}

}  // namespace

TEST_CASE("pencil_isospectral trivial cases and errors") {
  std::mt19937_64 rng(31);
  Context ctx(7);
  PrimeField F(7);
  auto L = lift(ctx, commuting_family(F, 3, 2, rng));
  CHECK(pencil_isospectral(L, L, Strategy::kSymbolic, rng).isospectral);
  auto g = random_invertible(F, 3, rng);
  auto gp = to_poly_matrix(ctx, g), gi = to_poly_matrix(ctx, inverse(g));
  std::vector<PolyMatrix> conj;
  for (const auto& m : L) conj.push_back(gp * m * gi);
  CHECK(pencil_isospectral(L, conj, Strategy::kSymbolic, rng).isospectral);
  CHECK(pencil_isospectral(L, conj, Strategy::kSampled, rng).isospectral);
  std::vector<PolyMatrix> bad{to_poly_matrix(ctx, random_fp_matrix(F, 3, rng)),
                              to_poly_matrix(ctx, random_fp_matrix(F, 3, rng))};
  CHECK_THROWS_AS(pencil_isospectral(bad, bad, Strategy::kSymbolic, rng), NonCommutingError);
  auto swapped = L;
  swapped[0] = L[0] + PolyMatrix::identity(L[0].ring(), 3);
  auto res = pencil_isospectral(L, swapped, Strategy::kSymbolic, rng);
  CHECK_FALSE(res.isospectral);
  CHECK(res.lhs_charpoly.size() == 4);
}

TEST_CASE("symbolic and sampled strategies agree on random commuting pencils") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    Fp p = (t % 2) ? 101 : 97;
    Context ctx(p);
    PrimeField F(p);
    std::size_t n = 1 + t % 4, r = 1 + t % 3;
    auto L = lift(ctx, commuting_family(F, n, r, rng));
    std::vector<PolyMatrix> M;
    if (t % 3 == 0) {
      M = lift(ctx, commuting_family(F, n, r, rng));
    } else {
      auto g = random_invertible(F, n, rng);
      auto gp = to_poly_matrix(ctx, g), gi = to_poly_matrix(ctx, inverse(g));
      for (const auto& m : L) M.push_back(gp * m * gi);
    }
    auto sym = pencil_isospectral(L, M, Strategy::kSymbolic, rng);
    auto smp = pencil_isospectral(L, M, Strategy::kSampled, rng);
    CHECK(smp.used == Strategy::kSampled);
    CHECK(smp.log2_failure_bound < -30.0);
    CHECK(sym.isospectral == smp.isospectral);
  }
}

TEST_CASE("sampled strategy falls back when the field is too small") {
  CHECK(sampled_rounds(4, 3) == 0);
  CHECK(sampled_rounds(4, 5) == static_cast<std::size_t>(30.0 / std::log2(5.0 / 4.0)) + 1);
  std::mt19937_64 rng(1);
  Context ctx(3);
  PrimeField F(3);
  auto L = lift(ctx, commuting_family(F, 4, 2, rng));
  auto res = pencil_isospectral(L, L, Strategy::kSampled, rng);
  CHECK(res.used == Strategy::kSymbolic);
  CHECK(res.isospectral);
}

TEST_CASE("p-th power pencil is isospectral to the twisted pencil") {
  std::mt19937_64 rng(33);
  int count = 0;
  for (Fp p : {3u, 5u}) {
    for (int t = 0; t < 25; ++t, ++count) {
      Context ctx(p);
      PrimeField F(p);
      std::size_t n = 1 + t % 4, r = 1 + t % 3;
      auto fam = commuting_family(F, n, r, rng);
      // Symbolic u: (sum u_i L_i)^p against sum u_i^p L_i^(1).
      PolyRing R{&ctx};
      PolyMatrix lhs(R, n), rhs(R, n);
      for (std::size_t i = 0; i < r; ++i) {
        auto u = ctx.poly_var("u" + std::to_string(i + 1));
        lhs = lhs + to_poly_matrix(ctx, fam[i]).scale(u);
        rhs = rhs + matrix_frobenius_twist(to_poly_matrix(ctx, fam[i])).scale(u.pow(p));
      }
      CHECK(isospectral(lhs.pow(p), rhs));
    }
  }
  CHECK(count == 50);
}
