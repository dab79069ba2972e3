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
#include "pcurv/models.hpp"
#include "pcurv/sampling.hpp"

using namespace pcurv;

TEST_CASE("sl2 irreps and the Casimir tensor") {
  PrimeField F(7);
  for (unsigned m : {1u, 2u, 3u}) {
    auto V = sl2_irrep(F, m);
    CHECK(commutator(V.e, V.f) == V.h);
    CHECK(commutator(V.h, V.e) == V.e.scale(2));
    CHECK(commutator(V.h, V.f) == V.f.scale(F.neg(2)));
  }
  Sl2Tensor T(F, {1, 2});
  auto Om = T.omega(0, 1);
  CHECK(commutator(Om, T.total_e()).is_zero());
  CHECK(commutator(Om, T.total_f()).is_zero());
  CHECK(commutator(Om, T.total_h()).is_zero());
}

TEST_CASE("irregular KZ") {
  Context ctx(5);
  auto m = irregular_kz(ctx, {1, 1});
  CHECK(m.conn.is_flat());
  auto bs = b_star_mixed(m.conn);
  for (std::size_t i = 0; i < 2; ++i) CHECK(bs[i] == m.target[i]);
  VerifyPlan plan;
  plan.samples = 4;
  CHECK(verify_isospectrality(m.conn, m.target, plan).all_pass());
  // hbar = 0: constant connection, C_i = -(eta h^{(i)})^p.
  const int hb = ctx.find("hbar");
  auto C = p_curvature(m.conn, 0, {{hb, 0}});
  CHECK(C == evaluate(m.target[0], {{hb, 0}}));
  // eta = 0 reduces to KZ.
  Context c2(5);
  auto kz = kz_pencil(c2, {1, 1});
  CHECK(evaluate(m.conn.B(0), {{ctx.find("eta"), 0}}).to_string() == kz.conn.B(0).to_string());
}

TEST_CASE("irregular Casimir, sl2") {
  for (auto reps : {std::vector<unsigned>{1}, std::vector<unsigned>{1, 1}, std::vector<unsigned>{1, 2}}) {
    Context ctx(5);
    auto m = irregular_casimir_sl2(ctx, reps);
    CHECK(b_star_mixed(m.conn)[0] == m.target[0]);
    VerifyPlan plan;
    plan.samples = 4;
    auto rep = verify_isospectrality(m.conn, m.target, plan);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("irregular Dunkl A1, both reflection signs") {
  for (int sign : {1, -1}) {
    Context ctx(7);
    auto m = dunkl_irregular_a1(ctx, sign);
    VerifyPlan plan;
    plan.samples = 4;
    CHECK(verify_isospectrality(m.conn, m.target, plan).all_pass());
    // c = 0: C = -diag(lambda^p, -lambda^p).
    auto C = p_curvature(m.conn, 0, {{ctx.find("c"), 0}});
    CHECK(C == evaluate(m.target[0], {{ctx.find("c"), 0}}));
    // lambda = 0, c in F_p: nilpotent.
    for (Fp c = 0; c < 7; ++c) {
      CHECK(is_nilpotent(p_curvature(m.conn, 0, {{ctx.find("c"), c}, {ctx.find("lambda"), 0}})));
    }
  }
}

TEST_CASE("Gaudin operators") {
  Context ctx(7);
  auto G = gaudin_operators(ctx, 2);
  REQUIRE(G.size() == 1);
  auto x = ctx.poly_var("x1") - ctx.poly_var("x2");
  auto y = (ctx.poly_var("lambda1") - ctx.poly_var("lambda2")).scale(ctx.field().inv(2));
  auto c = ctx.poly_var("c");
  auto cp = char_poly(G[0]);
  CHECK(cp[2] == RatFunc::constant(ctx, 1));
  CHECK(cp[1].is_zero());
  CHECK(cp[0] == -(RatFunc(y * y) + RatFunc(c * c) * RatFunc::inv_linear(x, 2)));
  RatRing R{&ctx};
  auto cx = RatFunc(c) * RatFunc::inv_linear(x);
  CHECK(G[0] == RatMatrix::from_rows(R, {{RatFunc(y), cx}, {cx, RatFunc(-y)}}));
  Context c3(7);
  auto G3 = gaudin_operators(c3, 3);
  REQUIRE(G3.size() == 2);
  CHECK(commutator(G3[0], G3[1]).is_zero());
  auto M = gaudin_slots(c3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(commutator(M[i], M[j]).is_zero());
  Context c3bad(3);
  CHECK_THROWS_AS(gaudin_operators(c3bad, 3), std::invalid_argument);
}

TEST_CASE("Calogero-Moser Lax matrix and operator identity") {
  Context ctx(11);
  auto L = cm_lax(ctx, 2);
  auto H = cm_hamiltonians(ctx, 3);
  auto mu1 = ctx.poly_var("mu1"), mu2 = ctx.poly_var("mu2"), mu3 = ctx.poly_var("mu3");
  auto c2 = RatFunc(ctx.poly_var("c").pow(2));
  auto x1 = ctx.poly_var("x1"), x2 = ctx.poly_var("x2"), x3 = ctx.poly_var("x3");
  auto i23 = RatFunc::inv_linear(x2 - x3, 2), i31 = RatFunc::inv_linear(x3 - x1, 2),
       i12 = RatFunc::inv_linear(x1 - x2, 2);
  CHECK(H[1] == RatFunc(mu1 * mu2 + mu1 * mu3 + mu2 * mu3) + c2 * (i23 + i31 + i12));
  CHECK(H[2] == RatFunc(mu1 * mu2 * mu3) + c2 * (RatFunc(mu1) * i23 + RatFunc(mu2) * i31 + RatFunc(mu3) * i12));
  (void)L;
  Context s2(7);
  for (const auto& D : cm_operator_identity(s2, 2)) CHECK(D.is_zero());
  Context s3(7);
  auto D3 = cm_operator_identity(s3, 3);
  for (const auto& D : D3) CHECK(is_nilpotent(D));
}

TEST_CASE("Toda rank one") {
  for (Fp p : {5u, 7u}) {
    Context ctx(p);
    auto m = toda_rank1(ctx);
    auto nh = nil_hecke_a1(ctx, ctx.poly_var("lambda"));
    CHECK((nh.sbar * nh.sbar).is_zero());
    // sbar h - s(h) sbar = alpha(h) with h = omega.
    CHECK(nh.sbar * nh.omega - nh.s_omega * nh.sbar == RatMatrix::identity(nh.sbar.ring(), 2));
    VerifyPlan plan;
    plan.samples = 4;
    CHECK(verify_isospectrality(m.conn, m.target, plan).all_pass());
  }
}

TEST_CASE("qKZ and additive qKZ") {
  Context ctx(7);
  auto m = qkz_model(ctx, 3);
  auto C = p_curvature_multiplicative(m.conn, 0);
  CHECK(isospectral(C, m.target));
  for (Fp p : {3u, 5u}) {
    Context c(p);
    auto a = qkz_additive_model(c);
    CHECK(isospectral(p_curvature_additive(a.conn, 0), a.target));
  }
}
