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

#include <random>

#include "doctest.h"
#include "pcurv/connection.hpp"
#include "pcurv/difference.hpp"
#include "pcurv/models.hpp"

using namespace pcurv;

namespace {

RatMatrix scalar(const Context& ctx, const RatFunc& f) {
  return RatMatrix::from_rows(RatRing{&ctx}, {{f}});
}

// Every char-poly coefficient is a function of v^p: numerator exponents of v
// are multiples of p and v-dependent factors appear to p-th powers.
bool charpoly_in_pth_powers(const RatMatrix& M, int v, std::uint32_t p) {
  for (const auto& c : char_poly(M)) {
    auto n = c.normalize();
    for (const auto& f : n.den())
      if (f.form.depends_on(v) && f.exp % p) return false;
    for (const auto& t : n.num().terms())
      if (t.m.e[v] % p) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("additive p-curvature examples") {
  Context ctx(3, {"x"});
  auto x = ctx.poly_var("x");
  RatRing R{&ctx};
  auto id = ShiftConnection::additive(ctx, {"x"}, {RatMatrix::identity(R, 2)});
  CHECK(p_curvature_additive(id, 0) == RatMatrix::identity(R, 2));
  auto M = RatMatrix::from_rows(R, {{R.from_fp(1), R.from_fp(2)}, {R.zero(), R.from_fp(2)}});
  CHECK(p_curvature_additive(ShiftConnection::additive(ctx, {"x"}, {M}), 0) == M.pow(3));
  auto lin = ShiftConnection::additive(ctx, {"x"}, {scalar(ctx, RatFunc(x))});
  CHECK(p_curvature_additive(lin, 0)(0, 0) == RatFunc(x.pow(3) - x));
  CHECK_THROWS_AS(p_curvature_multiplicative(lin, 0), std::invalid_argument);
  CHECK_THROWS_AS(ShiftConnection::additive(ctx, {"x"}, {RatMatrix(R, 2)}), std::invalid_argument);
}

TEST_CASE("multiplicative p-curvature examples") {
  Context ctx(7, {"z"});
  auto z = ctx.poly_var("z");
  RatRing R{&ctx};
  Fp q = find_order_p_element(ctx.field(), 3);
  auto id = ShiftConnection::multiplicative(ctx, {"z"}, {RatMatrix::identity(R, 2)}, q, 3);
  CHECK(p_curvature_multiplicative(id, 0) == RatMatrix::identity(R, 2));
  auto mono = ShiftConnection::multiplicative(ctx, {"z"}, {scalar(ctx, RatFunc(z))}, q, 3);
  CHECK(p_curvature_multiplicative(mono, 0)(0, 0) == RatFunc(z.pow(3)));
  auto lin = ShiftConnection::multiplicative(ctx, {"z"}, {scalar(ctx, RatFunc(z + ctx.constant(1)))}, q, 3);
  CHECK(p_curvature_multiplicative(lin, 0)(0, 0) == RatFunc(z.pow(3) + ctx.constant(1)));
  CHECK_THROWS_AS(ShiftConnection::multiplicative(ctx, {"z"}, {RatMatrix::identity(R, 1)}, 2, 2),
                  std::invalid_argument);
}

TEST_CASE("shift flatness") {
  Context ctx(5, {"x", "y"});
  RatRing R{&ctx};
  auto x = ctx.poly_var("x"), y = ctx.poly_var("y");
  auto one = ShiftConnection::additive(ctx, {"x"}, {scalar(ctx, RatFunc(x))});
  CHECK(shift_flatness_check(one));
  auto A = RatMatrix::from_rows(R, {{R.from_fp(1), R.from_fp(1)}, {R.zero(), R.from_fp(1)}});
  auto B = RatMatrix::from_rows(R, {{R.from_fp(2), R.from_fp(3)}, {R.zero(), R.from_fp(2)}});
  CHECK(shift_flatness_check(ShiftConnection::additive(ctx, {"x", "y"}, {A, B})));
  auto C = RatMatrix::from_rows(R, {{R.from_fp(1), R.zero()}, {R.from_fp(1), R.from_fp(1)}});
  CHECK_FALSE(shift_flatness_check(ShiftConnection::additive(ctx, {"x", "y"}, {A, C})));
}

TEST_CASE("difference gauge covariance") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    Context ctx(5, {"x", "a"});
    RatRing R{&ctx};
    auto x = ctx.poly_var("x"), a = ctx.poly_var("a");
    Fp c1 = 1 + rng() % 4, c2 = rng() % 5;
    auto B = RatMatrix::from_rows(R, {{RatFunc(x + a), R.from_fp(c1)}, {R.from_fp(c2), RatFunc::inv_linear(x + ctx.constant(c2))}});
    // g = diag(x + c1, 1/(x + c2))
    auto g = [&](const MultiPoly& arg) {
      return RatMatrix::from_rows(R, {{RatFunc(arg + ctx.constant(c1)), R.zero()},
                                      {R.zero(), RatFunc::inv_linear(arg + ctx.constant(c2))}});
    };
    auto ginv = [&](const MultiPoly& arg) {
      return RatMatrix::from_rows(R, {{RatFunc::inv_linear(arg + ctx.constant(c1)), R.zero()},
                                      {R.zero(), RatFunc(arg + ctx.constant(c2))}});
    };
    auto Bg = g(x + ctx.constant(1)) * B * ginv(x);
    auto C = p_curvature_additive(ShiftConnection::additive(ctx, {"x"}, {B}), 0);
    auto Cg = p_curvature_additive(ShiftConnection::additive(ctx, {"x"}, {Bg}), 0);
    CHECK(Cg == normalize(g(x) * C * ginv(x)));
  }
  Context ctx(11, {"z"});
  RatRing R{&ctx};
  auto z = ctx.poly_var("z");
  Fp q = find_order_p_element(ctx.field(), 5);
  auto B = RatMatrix::from_rows(R, {{RatFunc(z), R.one()}, {R.one(), R.from_fp(3)}});
  auto g = RatMatrix::from_rows(R, {{RatFunc(z + ctx.constant(2)), R.zero()}, {R.zero(), R.one()}});
  auto gq = RatMatrix::from_rows(R, {{RatFunc(z.scale(q) + ctx.constant(2)), R.zero()}, {R.zero(), R.one()}});
  auto ginv = RatMatrix::from_rows(R, {{RatFunc::inv_linear(z + ctx.constant(2)), R.zero()}, {R.zero(), R.one()}});
  auto C = p_curvature_multiplicative(ShiftConnection::multiplicative(ctx, {"z"}, {B}, q, 5), 0);
  auto Cg = p_curvature_multiplicative(ShiftConnection::multiplicative(ctx, {"z"}, {gq * B * ginv}, q, 5), 0);
  CHECK(Cg == normalize(g * C * ginv));
}

TEST_CASE("qKZ isospectrality, fully symbolic") {
  for (auto [p, ell] : {std::pair<Fp, Fp>{3, 7}, {5, 11}}) {
    Context ctx(ell);
    auto m = qkz_model(ctx, p);
    auto C = p_curvature_multiplicative(m.conn, 0);
    CHECK(isospectral(C, m.target));
    CHECK(charpoly_in_pth_powers(C, ctx.find("q"), p));
    CHECK(charpoly_in_pth_powers(C, ctx.find("t"), p));
    // q = 1: R = I.
    auto C1 = evaluate(C, {{ctx.find("q"), 1}});
    RatRing R{&ctx};
    auto t = ctx.poly_var("t");
    CHECK(C1 == RatMatrix::from_rows(R, {{RatFunc(t.pow(p)), R.zero()}, {R.zero(), RatFunc::inv_linear(t, p)}}));
  }
  Context bad(7);
  CHECK_THROWS_AS(qkz_model(bad, 5), std::invalid_argument);
}

TEST_CASE("additive qKZ isospectrality and s = 0") {
  for (Fp p : {3u, 5u, 7u}) {
    Context ctx(p);
    auto m = qkz_additive_model(ctx);
    auto C = p_curvature_additive(m.conn, 0);
    CHECK(isospectral(C, m.target));
    auto C0 = evaluate(C, {{ctx.find("s"), 0}});
    CHECK(C0 == evaluate(m.target, {{ctx.find("s"), 0}}));
  }
}

TEST_CASE("orbit products with p-th power char polys on R-matrix and nilpotent factors") {
  for (auto [p, ell] : {std::pair<Fp, Fp>{3, 7}, {5, 11}}) {
    Context ctx(ell, {"q", "t1", "t2"});
    const PrimeField& F = ctx.field();
    RatRing R{&ctx};
    Fp root = find_order_p_element(F, p);
    auto q = ctx.poly_var("q");
    std::vector<Fp> points;
    for (Fp z0 = 2; z0 < ell && points.size() < 2; ++z0)
      if (F.pow(z0, p) != 1) points.push_back(z0);
    for (Fp z0 : points) {
      std::vector<RatMatrix> A;
      for (Fp j = 0; j < p; ++j) {
        Fp w = F.mul(F.pow(root, j), z0);
        Fp inv = F.inv(F.sub(w, 1));
        Fp a = F.mul(w, inv);
        A.push_back(RatMatrix::from_rows(R, {{R.from_fp(a), R.from_fp(a)}, {R.from_fp(inv), R.from_fp(a)}}));
      }
      auto M = orbit_product(A, q);
      REQUIRE(charpoly_in_pth_powers(M, ctx.find("q"), p));
      CHECK(isospectral(M, orbit_product_target(A, q)));
      // Diagonal twist by (t, 1/t).
      auto t = ctx.poly_var("t1");
      auto tw = RatMatrix::from_rows(R, {{RatFunc(t), R.zero()}, {R.zero(), RatFunc::inv_linear(t)}});
      auto Mt = orbit_product(A, q, &tw);
      REQUIRE(charpoly_in_pth_powers(Mt, ctx.find("t1"), p));
      CHECK(isospectral(Mt, orbit_product_target(A, q, &tw)));
    }
    // Equal nilpotent factors.
    auto N = RatMatrix::from_rows(R, {{R.zero(), R.from_fp(3)}, {R.zero(), R.zero()}});
    std::vector<RatMatrix> A(p, N);
    CHECK(isospectral(orbit_product(A, q), orbit_product_target(A, q)));
  }
}

TEST_CASE("additive p-curvature degenerates to the differential one") {
  for (Fp p : {3u, 5u, 7u}) {
    Context ctx(p, {"Y", "a", "x"});
    auto Y = ctx.poly_var("Y"), a = ctx.poly_var("a"), x = ctx.poly_var("x");
    // B(Y) = (Y + a)/Y, the scalar model of 1 + (a/Y).
    auto add = ShiftConnection::additive(ctx, {"Y"}, {scalar(ctx, RatFunc(Y + a) * RatFunc::inv_linear(Y))});
    RatFunc Cadd = p_curvature_additive(add, 0)(0, 0) - RatFunc::constant(ctx, 1);
    // Rescaling Y = x/eps keeps the top-degree part of each denominator form.
    Cadd = Cadd.normalize();
    MultiPoly limit_den = ctx.constant(1);
    for (const auto& f : Cadd.den()) {
      MultiPoly top(ctx);
      for (const auto& t : f.form.terms())
        if (t.m.deg == f.form.total_degree()) top = top + MultiPoly::monomial(ctx, t.m, t.c);
      limit_den = limit_den * top.pow(f.exp);
    }
    RatFunc limit = RatFunc(Cadd.num().substitute(ctx.find("Y"), x)) *
                    RatFunc::inv_linear(x, limit_den.total_degree());
    CHECK(limit_den == Y.pow(p));
    // Differential side: d - a/x.
    ConnectionFamily diff(ctx, {"x"}, {{"a", ParamKind::kPeriodic}},
                          {scalar(ctx, RatFunc(a) * RatFunc::inv_linear(x))});
    RatFunc Cdiff = p_curvature(diff, 0)(0, 0);
    CHECK(limit == -Cdiff);
  }
}
