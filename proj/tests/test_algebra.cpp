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
#include "pcurv/field.hpp"
#include "pcurv/multipoly.hpp"
#include "pcurv/ratfunc.hpp"
#include "random_util.hpp"

using namespace pcurv;
using pcurv::testing::random_poly;

TEST_CASE("prime field basics") {
  PrimeField F(7);
  CHECK(F.inv(3) == 5);
  CHECK(F.pow(2, 6) == 1);
  CHECK_THROWS_AS(F.inv(0), std::domain_error);
  for (Fp a = 1; a < 7; ++a) {
    CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK(F.pow(a, 7) == a);
  }
  CHECK(is_prime(11));
  CHECK_FALSE(is_prime(9));
}

TEST_CASE("order-p elements") {
  PrimeField F7(7);
  Fp q = find_order_p_element(F7, 3);
  CHECK((q == 2 || q == 4));
  PrimeField F11(11);
  Fp q5 = find_order_p_element(F11, 5);
  CHECK(F11.pow(q5, 5) == 1);
  for (Fp j = 1; j < 5; ++j) CHECK(F11.pow(q5, j) != 1);
  CHECK(multiplicative_order(F11, q5) == 5);
  CHECK_THROWS_WITH_AS(find_order_p_element(F7, 5), doctest::Contains("divide"),
                       std::invalid_argument);
}

TEST_CASE("polynomial derivative and text form") {
  Context ctx(3, {"x", "y"});
  auto x = ctx.poly_var("x"), y = ctx.poly_var("y");
  CHECK(x.pow(3).derivative(0).is_zero());
  Context c7(7, {"x", "y"});
  auto X = c7.poly_var("x"), Y = c7.poly_var("y");
  CHECK((X * X + X * Y).derivative(0) == X.scale(2) + Y);
  CHECK((X.pow(2) * Y).scale(3) + c7.constant(1) == MultiPoly::from_int(c7, 1) + (X * X * Y).scale(3));
  CHECK(((X.pow(2) * Y).scale(3) + c7.constant(1)).to_string() == "3*x^2*y + 1 (mod 7)");
  (void)y;
}

TEST_CASE("ring axioms and Leibniz rule on random triples") {
  std::mt19937_64 rng(11);
  for (Fp p : {2u, 3u, 5u, 7u}) {
    Context ctx(p, {"x", "y", "z"});
    std::vector<int> vars{0, 1, 2};
    for (int t = 0; t < 40; ++t) {
      auto f = random_poly(ctx, vars, 3, 4, rng);
      auto g = random_poly(ctx, vars, 3, 4, rng);
      auto h = random_poly(ctx, vars, 2, 3, rng);
      CHECK((f + g) * h == f * h + g * h);
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * g == g * f);
      CHECK((f - f).is_zero());
      for (int v : vars) {
        CHECK((f * g).derivative(v) == f.derivative(v) * g + f * g.derivative(v));
        CHECK(f.pow(p).derivative(v).is_zero());
        CHECK(f.frobenius_twist().derivative(v).is_zero());
      }
      for (const auto& term : f.terms()) {
        for (std::size_t i = 3; i < kMaxVars; ++i) CHECK(term.m.e[i] == 0);
        CHECK(term.c != 0);
      }
    }
  }
}

TEST_CASE("frobenius twist") {
  Context ctx(5, {"x", "y"});
  auto x = ctx.poly_var("x"), y = ctx.poly_var("y");
  CHECK((x - y).frobenius_twist() == x.pow(5) - y.pow(5));
  CHECK(ctx.constant(1).frobenius_twist() == ctx.constant(1));
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Fp> d(0, 4);
  for (int t = 0; t < 50; ++t) {
    auto f = random_poly(ctx, {0, 1}, 3, 4, rng);
    auto g = random_poly(ctx, {0, 1}, 3, 4, rng);
    CHECK((f * g).frobenius_twist() == f.frobenius_twist() * g.frobenius_twist());
    CHECK((f + g).frobenius_twist() == f.frobenius_twist() + g.frobenius_twist());
    Fp a = d(rng), b = d(rng);
    const PrimeField& F = ctx.field();
    Fp ap = F.pow(a, 5), bp = F.pow(b, 5);
    CHECK(f.frobenius_twist().evaluate_all({{0, ap}, {1, bp}}) ==
          F.pow(f.evaluate_all({{0, a}, {1, b}}), 5));
  }
}

TEST_CASE("power substitution") {
  Context ctx(7, {"q", "z"});
  auto q = ctx.poly_var("q"), z = ctx.poly_var("z");
  auto f = q * z - ctx.constant(1);
  CHECK(f.power_substitute(3) == q.pow(3) * z.pow(3) - ctx.constant(1));
  CHECK(f.power_substitute(1) == f);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<Fp> d(0, 6);
  const PrimeField& F = ctx.field();
  for (int t = 0; t < 50; ++t) {
    auto g = random_poly(ctx, {0, 1}, 3, 4, rng);
    Fp a = d(rng), b = d(rng);
    CHECK(g.power_substitute(3).evaluate_all({{0, a}, {1, b}}) ==
          g.evaluate_all({{0, F.pow(a, 3)}, {1, F.pow(b, 3)}}));
  }
}

TEST_CASE("rational functions agree with evaluation") {
  Context ctx(11, {"x", "y"});
  auto x = ctx.poly_var("x"), y = ctx.poly_var("y");
  const PrimeField& F = ctx.field();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Fp> d(0, 10);
  auto f = RatFunc(x * y + ctx.constant(2), {{x - y, 2}, {x, 1}});
  auto g = RatFunc(y.pow(2), {{x + y.scale(3), 1}});
  auto value = [&](const RatFunc& r, Fp a, Fp b) {
    return r.evaluate({{0, a}, {1, b}}).to_poly().constant_value();
  };
  int tried = 0;
  while (tried < 100) {
    Fp a = d(rng), b = d(rng);
    if (a == 0 || a == b || F.add(a, F.mul(3, b)) == 0) continue;
    ++tried;
    Fp fa = value(f, a, b), ga = value(g, a, b);
    CHECK(value(f + g, a, b) == F.add(fa, ga));
    CHECK(value(f * g, a, b) == F.mul(fa, ga));
    CHECK(value(f - g, a, b) == F.sub(fa, ga));
  }
  // Closure under differentiation keeps the factor set.
  auto df = f.derivative(0);
  for (const auto& fac : df.den()) {
    bool known = false;
    for (const auto& orig : f.den()) known = known || orig.form == fac.form;
    CHECK(known);
    CHECK(fac.form.total_degree() <= 1);
  }
  // Quotient rule against the product form.
  CHECK((f * g).derivative(1) == f.derivative(1) * g + f * g.derivative(1));
}

TEST_CASE("normalize cancels exact factors only") {
  Context ctx(7, {"x", "y"});
  auto x = ctx.poly_var("x"), y = ctx.poly_var("y");
  auto r = RatFunc((x - y) * (x + y), {{x - y, 2}});
  auto n = r.normalize();
  REQUIRE(n.den().size() == 1);
  CHECK(n.den()[0].exp == 1);
  CHECK(n == r);
  auto s = RatFunc(x.pow(3) - ctx.constant(1), {{x - ctx.constant(1), 1}}).normalize();
  CHECK(s.is_polynomial());
  CHECK(s.to_poly() == x.pow(2) + x + ctx.constant(1));
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<Fp> d(0, 6);
  for (int t = 0; t < 100; ++t) {
    Fp a = d(rng), b = d(rng);
    if (a == b) continue;
    CHECK(r.evaluate({{0, a}, {1, b}}) == n.evaluate({{0, a}, {1, b}}));
  }
}

TEST_CASE("rational twist and poles") {
  Context ctx(5, {"x", "y"});
  auto x = ctx.poly_var("x"), y = ctx.poly_var("y");
  auto r = RatFunc::inv_linear(x - y);
  CHECK(r.frobenius_twist() * RatFunc(x.pow(5) - y.pow(5)) == RatFunc::constant(ctx, 1));
  CHECK_THROWS_AS(r.evaluate({{0, 2}, {1, 2}}), PoleError);
}
