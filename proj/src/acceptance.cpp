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

#include "pcurv/acceptance.hpp"

#include <sstream>
#include <stdexcept>

#include "pcurv/connection.hpp"
#include "pcurv/harness.hpp"
#include "pcurv/models.hpp"
#include "pcurv/sampling.hpp"

namespace pcurv {

namespace {

struct Tally {
  std::size_t ok = 0, total = 0;
  void add(bool pass) {
    ok += pass;
    ++total;
  }
  bool all() const { return ok == total; }
  std::string str() const { return std::to_string(ok) + "/" + std::to_string(total); }
};

// Folds a harness report into the tally: one entry per record and per check.
bool absorb(Tally& t, const VerificationReport& r) {
  for (const auto& run : r.runs) {
    for (const auto& s : run.samples) t.add(s.pass);
    for (const auto& k : run.checks) t.add(k.pass);
  }
  return r.exit_code() == kExitPass;
}

VerificationReport harness(const std::string& model, std::vector<std::uint32_t> primes, std::size_t samples,
                           std::uint64_t seed, std::vector<unsigned> reps = {}, std::size_t n = 0) {
  HarnessConfig c;
  c.model = model;
  c.primes = std::move(primes);
  c.samples = samples;
  c.seed = seed;
  c.reps = std::move(reps);
  c.n = n;
  return verify_model(c);
}

MultiPoly random_poly_in(const Context& ctx, int v, unsigned deg, std::mt19937_64& rng) {
  MultiPoly f(ctx);
  for (unsigned k = 0; k <= deg; ++k) f += MultiPoly::variable(ctx, v, k).scale(draw_residue(rng, ctx.p()));
  return f;
}

PolyMatrix derivative(const PolyMatrix& a, int x) {
  return a.map(a.ring(), [x](const MultiPoly& f) { return f.derivative(x); });
}

// ------------------------------------------------------------ criteria

AcOutcome ac1(std::uint64_t seed) {
  Tally t;
  for (std::uint32_t p : {2u, 3u}) {
    Context ctx(p, {"x"});
    const int x = ctx.find("x");
    auto rng = sample_rng(seed, p, 0);
    for (int trial = 0; trial < 50; ++trial) {
      PolyMatrix a(PolyRing{&ctx}, 3);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = random_poly_in(ctx, x, 3, rng);
      // d + a is d - B with B = -a.
      ConnectionFamily conn(ctx, {"x"}, {}, {to_rat_matrix(-a)});
      auto C = p_curvature(conn, 0);
      auto da = derivative(a, x);
      PolyMatrix expect = p == 2 ? a * a + da : a * a * a + commutator(da, a) + derivative(da, x);
      t.add(C == to_rat_matrix(expect));
    }
  }
  return {t.all(), "closed forms at p=2,3 on random 3x3 matrices of degree <= 3: " + t.str()};
}

AcOutcome ac2(std::uint64_t) {
  Tally t;
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    Context ctx(p);
    auto m = pseudo_pencil_example(ctx);
    auto C = p_curvature(m.conn, 0);
    t.add(C == pseudo_pencil_closed_form(ctx));
    t.add(!trivializable_at_zero_test(C, ctx.find("s")));
  }
  return {t.all(), "closed form and non-trivializability at p=2,3,5,7: " + t.str()};
}

AcOutcome ac3(std::uint64_t seed) {
  Tally t;
  bool ok = true;
  for (auto reps : {std::vector<unsigned>{1, 1}, std::vector<unsigned>{1, 1, 1}})
    ok = absorb(t, harness("kz", {5, 7, 11}, 20, seed, reps)) && ok;
  Tally nil;
  for (auto reps : {std::vector<unsigned>{1, 1}, std::vector<unsigned>{1, 1, 1}}) {
    Context ctx(5);
    auto kz = kz_pencil(ctx, reps);
    const int hb = ctx.find("hbar");
    for (Fp h = 0; h < 5; ++h)
      for (std::size_t i = 0; i < kz.conn.rank(); ++i) nil.add(is_nilpotent(p_curvature(kz.conn, i, {{hb, h}})));
  }
  return {ok && nil.all(), "isospectral samples " + t.str() + "; nilpotent C_i over hbar in F_5 " + nil.str()};
}

AcOutcome ac4(std::uint64_t seed) {
  Tally t;
  bool ok = true;
  for (auto reps : {std::vector<unsigned>{1, 1}, std::vector<unsigned>{1, 1, 1}})
    ok = absorb(t, harness("kz-irregular", {5, 7}, 20, seed, reps)) && ok;
  return {ok, "irregular KZ, 2 and 3 points, p=5,7: " + t.str()};
}

AcOutcome ac5(std::uint64_t seed) {
  Tally t;
  bool ok = absorb(t, harness("dunkl-a1", {5, 7, 11}, 20, seed));
  return {ok, "irregular Dunkl A_1 at p=5,7,11: " + t.str()};
}

AcOutcome ac6(std::uint64_t seed) {
  Tally t;
  bool ok = absorb(t, harness("gaudin-sn", {5, 7, 11}, 0, seed, {}, 2));
  return {ok, "n=2 Gaudin char poly and commutativity at p=5,7,11: " + t.str()};
}

AcOutcome ac7(std::uint64_t seed) {
  Tally s2, s3;
  bool ok = absorb(s2, harness("cm-identity", {7, 11}, 0, seed, {}, 2));
  ok = absorb(s3, harness("cm-identity", {7, 11}, 10, seed, {}, 3)) && ok;
  return {ok, "S_2 defects zero " + s2.str() + "; S_3 defects nilpotent " + s3.str()};
}

AcOutcome ac8(std::uint64_t seed) {
  Tally t;
  bool ok = absorb(t, harness("qkz", {3, 5, 7}, 20, seed));
  return {ok, "qKZ at (p,ell)=(3,7),(5,11),(7,29), z symbolic: " + t.str()};
}

AcOutcome ac9(std::uint64_t seed) {
  Tally t;
  bool ok = absorb(t, harness("qkz-additive", {3, 5, 7}, 20, seed));
  return {ok, "additive qKZ at p=3,5,7, u symbolic: " + t.str()};
}

AcOutcome ac10(std::uint64_t) {
  Tally t;
  {
    Context ctx(5);
    auto kz = kz_pencil(ctx, {1, 1});
    const int hb = ctx.find("hbar");
    const std::vector<Fp> base{1, 3};
    Assignment at_base{{kz.conn.coord(0), base[0]}, {kz.conn.coord(1), base[1]}};
    for (Fp h = 0; h < 5; ++h) {
      Assignment par{{hb, h}};
      // The kernel of C at the base point is the whole fiber.
      bool zero = true;
      for (std::size_t i = 0; i < 2; ++i) zero = zero && evaluate(p_curvature(kz.conn, i, par), at_base).is_zero();
      auto F = flat_section_basis(kz.conn, par, base);
      bool flat = true;
      FpMatrix at(FieldRing{&ctx.field()}, kz.conn.dim());
      for (std::size_t k = 0; k < F.size(); ++k) {
        for (std::size_t i = 0; i < 2; ++i) {
          for (const auto& e : covariant_apply(kz.conn, i, par, F[k])) flat = flat && e.is_zero();
        }
        for (std::size_t j = 0; j < F[k].size(); ++j) at(j, k) = F[k][j].evaluate_poly(at_base).constant_value();
      }
      t.add(zero && flat && rank(at) == kz.conn.dim());
    }
  }
  {
    Context ctx(5, {"x", "s"});
    RatRing R{&ctx};
    const int s = ctx.find("s");
    ConnectionFamily conn(ctx, {"x"}, {{"s", ParamKind::kPeriodic}},
                          {RatMatrix::from_rows(R, {{RatFunc(ctx.poly_var("s")) * RatFunc::inv_linear(ctx.poly_var("x"))}})});
    for (Fp sv = 0; sv < 5; ++sv) {
      auto F = flat_section_basis(conn, {{s, sv}}, {2});
      bool flat = covariant_apply(conn, 0, {{s, sv}}, F[0])[0].is_zero();
      t.add(flat && F[0][0].evaluate_poly({{ctx.find("x"), 2}}) == ctx.constant(1));
    }
  }
  return {t.all(), "flat bases for KZ V(1)xV(1) and d - s/x over F_5 parameters: " + t.str()};
}

AcOutcome ac11(std::uint64_t seed) {
  Tally t;
  for (std::uint32_t p : {3u, 5u}) {
    auto rng = sample_rng(seed, p, 11);
    PrimeField F(p);
    for (int trial = 0; trial < 25; ++trial) {
      Context ctx(p);
      const std::size_t n = 1 + draw_residue(rng, 4), r = 1 + draw_residue(rng, 3);
      FpMatrix A(FieldRing{&F}, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = draw_residue(rng, p);
      PolyRing R{&ctx};
      PolyMatrix lhs(R, n), rhs(R, n);
      for (std::size_t i = 0; i < r; ++i) {
        FpMatrix L(A.ring(), n), pw = FpMatrix::identity(A.ring(), n);
        for (std::size_t k = 0; k < n; ++k) {
          L = L + pw.scale(draw_residue(rng, p));
          pw = pw * A;
        }
        auto u = ctx.poly_var("u" + std::to_string(i + 1));
        auto Lp = to_poly_matrix(ctx, L);
        lhs = lhs + Lp.scale(u);
        rhs = rhs + matrix_frobenius_twist(Lp).scale(u.pow(p));
      }
      t.add(isospectral(lhs.pow(p), rhs));
    }
  }
  return {t.all(), "(sum u_i L_i)^p against sum u_i^p L_i^(1), p=3,5: " + t.str()};
}

AcOutcome ac12(std::uint64_t seed) {
  Tally t;
  bool ok = absorb(t, harness("toda-a1", {5, 7}, 20, seed));
  return {ok, "Toda rank 1, torus frame, p=5,7: " + t.str()};
}

AcOutcome ac13(std::uint64_t seed) {
  Tally t;
  std::size_t top = 0;
  {
    Context ctx(5);
    auto kz = kz_pencil(ctx, {1, 1});
    const int hb = ctx.find("hbar");
    const int u1 = ctx.var("u1"), u2 = ctx.var("u2");
    for (std::size_t k = 0; k < 20; ++k) {
      auto rng = sample_rng(seed, 5, k);
      Assignment pt;
      Fp x1 = draw_residue(rng, 5), x2 = draw_residue(rng, 5);
      while (x2 == x1) x2 = draw_residue(rng, 5);
      pt = {{kz.conn.coord(0), x1}, {kz.conn.coord(1), x2}, {u1, draw_residue(rng, 5)}, {u2, draw_residue(rng, 5)}};
      PolyMatrix M(PolyRing{&ctx}, kz.conn.dim());
      for (std::size_t i = 0; i < 2; ++i) {
        Assignment other{pt[1 - i]};
        auto C = evaluate_poly(p_curvature(kz.conn, i, other), pt);
        M = M + C.scale(ctx.poly_var(i ? u2 : u1).evaluate(pt));
      }
      for (std::size_t m = 1; m <= M.size(); ++m) {
        auto a = artin_schreier_expand(trace_wedge(M, m), hb);
        bool ok = a.size() <= m + 1;
        for (const auto& c : a) ok = ok && !c.depends_on(hb);
        if (!a.empty()) top = std::max(top, a.size() - 1);
        t.add(ok);
      }
    }
  }
  Tally irr;
  for (auto reps : {std::vector<unsigned>{1, 1}, std::vector<unsigned>{1, 1, 1}}) {
    Context ctx(5);
    auto m = irregular_kz(ctx, reps);
    const int hb = ctx.find("hbar"), eta = ctx.find("eta");
    for (std::size_t i = 0; i < m.conn.rank(); ++i) {
      auto C = normalize(p_curvature(m.conn, i, {{hb, 0}}));
      bool ok = true;
      for (std::size_t a = 0; a < C.size(); ++a)
        for (std::size_t b = 0; b < C.size(); ++b) {
          ok = ok && C(a, b).is_polynomial();
          for (const auto& term : C(a, b).num().terms()) ok = ok && term.m.e[eta] % 5 == 0;
        }
      irr.add(ok);
    }
  }
  return {t.all() && irr.all(), "Tr wedge^m expansions in hbar - hbar^p of degree <= m " + t.str() +
                                    " (max degree " + std::to_string(top) + "); irregular KZ at hbar=0 in eta^p " +
                                    irr.str()};
}

}  // namespace

const std::vector<AcEntry>& acceptance_matrix() {
  static const std::vector<AcEntry> m = {
      {"AC-1", "closed-form p-curvature of d + a at p = 2, 3", ac1},
      {"AC-2", "pseudo-pencil closed form, not trivializable at 0", ac2},
      {"AC-3", "KZ pencil isospectrality and nilpotence", ac3},
      {"AC-4", "irregular KZ mixed-periodic isospectrality", ac4},
      {"AC-5", "irregular Dunkl A_1 isospectrality", ac5},
      {"AC-6", "Gaudin n = 2 characteristic polynomial", ac6},
      {"AC-7", "Calogero-Moser operator identity", ac7},
      {"AC-8", "qKZ p-curvature isospectrality", ac8},
      {"AC-9", "additive qKZ isospectrality", ac9},
      {"AC-10", "flat section bases", ac10},
      {"AC-11", "p-th power pencil against twisted pencil", ac11},
      {"AC-12", "Toda rank 1 in the torus frame", ac12},
      {"AC-13", "Artin-Schreier structure of the invariants", ac13},
  };
  return m;
}

std::vector<std::string> suite_profile(const std::string& profile) {
  if (profile == "quick") return {"AC-1", "AC-2", "AC-6"};
  if (profile == "full") {
    std::vector<std::string> ids;
    for (const auto& e : acceptance_matrix()) ids.push_back(e.id);
    return ids;
  }
  throw std::invalid_argument("unknown suite profile '" + profile + "'; expected quick or full");
}

AcOutcome run_acceptance(const AcEntry& entry, std::uint64_t seed) {
  try {
    return entry.run(seed);
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace pcurv
