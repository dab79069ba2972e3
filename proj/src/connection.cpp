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

#include "pcurv/connection.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace pcurv {

namespace {

bool assigns(const Assignment& a, int v) {
  return std::any_of(a.begin(), a.end(), [v](const auto& kv) { return kv.first == v; });
}

std::vector<RatFunc> basis_vector(const Context& ctx, std::size_t n, std::size_t k) {
  std::vector<RatFunc> v(n, RatFunc(ctx));
  v[k] = RatFunc::constant(ctx, 1);
  return v;
}

// One step of the covariant derivative with an already specialized B.
std::vector<RatFunc> step(const RatMatrix& B, int x, Frame frame, const std::vector<RatFunc>& v) {
  const Context& ctx = *B.ring().C;
  std::vector<RatFunc> out = B.apply(v);
  RatFunc xv = RatFunc(ctx.poly_var(x));
  for (std::size_t k = 0; k < v.size(); ++k) {
    RatFunc d = v[k].derivative(x);
    if (frame == Frame::kTorus) d = d * xv;
    out[k] = (d - out[k]).normalize();
  }
  return out;
}

RatMatrix from_columns(const RatRing& ring, const std::vector<std::vector<RatFunc>>& cols) {
  RatMatrix m(ring, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols.size(); ++i) m(i, j) = cols[j][i];
  return m;
}

RatMatrix specialized_B(const ConnectionFamily& conn, std::size_t i, const Assignment& fixed) {
  if (assigns(fixed, conn.coord(i))) {
    throw std::invalid_argument("covariant derivative along an assigned coordinate");
  }
  return evaluate(conn.B(i), fixed);
}

RatMatrix curvature_of(const RatMatrix& B, int x, Frame frame, std::uint32_t p) {
  const Context& ctx = *B.ring().C;
  std::vector<std::vector<RatFunc>> cols;
  for (std::size_t k = 0; k < B.size(); ++k) {
    auto v = basis_vector(ctx, B.size(), k);
    std::vector<RatFunc> first;
    for (std::uint32_t t = 0; t < p; ++t) {
      v = step(B, x, frame, v);
      if (t == 0) first = v;
    }
    if (frame == Frame::kTorus) {
      for (std::size_t r = 0; r < v.size(); ++r) v[r] = (v[r] - first[r]).normalize();
    }
    cols.push_back(std::move(v));
  }
  return from_columns(B.ring(), cols);
}

}  // namespace

ConnectionFamily::ConnectionFamily(const Context& ctx, const std::vector<std::string>& coords,
                                   std::vector<Parameter> params, std::vector<RatMatrix> B,
                                   Frame frame)
    : ctx_(&ctx), params_(std::move(params)), B_(std::move(B)), frame_(frame) {
  if (coords.size() != B_.size()) throw std::invalid_argument("one matrix per coordinate required");
  for (const auto& c : coords) coords_.push_back(ctx.var(c));
  for (const auto& p : params_) ctx.var(p.name);
  for (const auto& b : B_) {
    if (b.size() != dim()) throw std::invalid_argument("connection matrices differ in size");
  }
}

ConnectionFamily ConnectionFamily::pencil(const Context& ctx, const std::vector<std::string>& coords,
                                          std::vector<Parameter> params,
                                          std::vector<std::vector<RatMatrix>> terms, Frame frame) {
  std::vector<int> pv;
  for (const auto& p : params) pv.push_back(ctx.var(p.name));
  std::vector<RatMatrix> B;
  for (const auto& row : terms) {
    if (row.size() != params.size()) throw std::invalid_argument("pencil: one term per parameter");
    RatMatrix acc(RatRing{&ctx}, row.front().size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      for (std::size_t a = 0; a < row[j].size(); ++a) {
        for (std::size_t b = 0; b < row[j].size(); ++b) {
          for (int v : pv) {
            if (row[j](a, b).depends_on(v)) {
              throw std::invalid_argument("pencil: term depends on parameter " + ctx.name(v));
            }
          }
        }
      }
      acc = acc + row[j].scale(RatFunc(ctx.poly_var(pv[j])));
    }
    B.push_back(acc);
  }
  ConnectionFamily c(ctx, coords, std::move(params), std::move(B), frame);
  c.terms_ = std::move(terms);
  return c;
}

std::vector<int> ConnectionFamily::param_vars() const {
  std::vector<int> out;
  for (const auto& p : params_) out.push_back(ctx_->find(p.name));
  return out;
}

bool ConnectionFamily::is_flat() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t l = i + 1; l < rank(); ++l) {
      const int xi = coords_[i], xl = coords_[l];
      RatMatrix lhs = B_[i].map(B_[i].ring(), [&](const RatFunc&) { return RatFunc(*ctx_); });
      for (std::size_t a = 0; a < dim(); ++a)
        for (std::size_t b = 0; b < dim(); ++b)
          lhs(a, b) = B_[l](a, b).derivative(xi) - B_[i](a, b).derivative(xl);
      if (lhs != commutator(B_[i], B_[l])) return false;
    }
  }
  return true;
}

std::vector<RatFunc> covariant_apply(const ConnectionFamily& conn, std::size_t i,
                                     const Assignment& fixed, const std::vector<RatFunc>& v) {
  if (v.size() != conn.dim()) throw std::invalid_argument("section has the wrong dimension");
  return step(specialized_B(conn, i, fixed), conn.coord(i), conn.frame(), v);
}

RatMatrix p_curvature(const ConnectionFamily& conn, std::size_t i, const Assignment& fixed,
                      bool check_linearity) {
  RatMatrix B = specialized_B(conn, i, fixed);
  const int x = conn.coord(i);
  const std::uint32_t p = conn.ctx().p();
  RatMatrix C = curvature_of(B, x, conn.frame(), p);
  if (check_linearity) {
    // f = x^2 + 3x + 1 times a column sum; the operator must act as f*C.
    const Context& ctx = conn.ctx();
    MultiPoly xp = ctx.poly_var(x);
    RatFunc f(xp * xp + xp.scale(3) + ctx.constant(1));
    std::vector<RatFunc> v(B.size(), f), first;
    for (std::uint32_t t = 0; t < p; ++t) {
      v = step(B, x, conn.frame(), v);
      if (t == 0) first = v;
    }
    std::vector<RatFunc> ones(B.size(), RatFunc::constant(ctx, 1));
    auto expect = C.apply(ones);
    for (std::size_t r = 0; r < v.size(); ++r) {
      RatFunc got = conn.frame() == Frame::kTorus ? v[r] - first[r] : v[r];
      if (got != f * expect[r]) {
        throw std::logic_error("p-curvature is not function-linear; derivative terms remain");
      }
    }
  }
  return C;
}

RatMatrix torus_p_curvature(const ConnectionFamily& conn, std::size_t i, const Assignment& fixed) {
  if (conn.frame() != Frame::kTorus) throw std::invalid_argument("connection is not in the torus frame");
  RatMatrix B = specialized_B(conn, i, fixed);
  const int z = conn.coord(i);
  const Context& ctx = conn.ctx();
  RatMatrix direct = curvature_of(B, z, Frame::kTorus, ctx.p());
  RatFunc inv_z = RatFunc::inv_linear(ctx.poly_var(z));
  RatMatrix affine = curvature_of(B.scale(inv_z), z, Frame::kAffine, ctx.p());
  RatMatrix via_affine = normalize(affine.scale(RatFunc(ctx.poly_var(z).pow(ctx.p()))));
  if (direct != via_affine) {
    throw std::logic_error("torus p-curvature disagrees with the affine-frame computation");
  }
  return direct;
}

namespace {

std::vector<RatMatrix> star(const ConnectionFamily& pencil, bool allow_infinitesimal) {
  if (!pencil.is_pencil()) throw std::invalid_argument("b_star requires a pencil");
  const Context& ctx = pencil.ctx();
  const std::uint32_t p = ctx.p();
  std::vector<RatMatrix> out;
  for (const auto& row : pencil.pencil_terms()) {
    RatMatrix acc(RatRing{&ctx}, pencil.dim());
    for (std::size_t j = 0; j < row.size(); ++j) {
      const Parameter& par = pencil.params()[j];
      MultiPoly s = ctx.poly_var(par.name);
      MultiPoly coeff;
      if (par.kind == ParamKind::kPeriodic) {
        coeff = s - s.pow(p);
      } else {
        if (!allow_infinitesimal) {
          throw std::invalid_argument("b_star: parameter " + par.name + " is infinitesimal");
        }
        coeff = -s.pow(p);
      }
      acc = acc + matrix_frobenius_twist(row[j]).scale(RatFunc(coeff));
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace

std::vector<RatMatrix> b_star(const ConnectionFamily& pencil) { return star(pencil, false); }
std::vector<RatMatrix> b_star_mixed(const ConnectionFamily& pencil) { return star(pencil, true); }

std::vector<std::vector<RatFunc>> flat_section_basis(const ConnectionFamily& conn,
                                                     const Assignment& params,
                                                     const std::vector<Fp>& base) {
  const Context& ctx = conn.ctx();
  const std::size_t r = conn.rank(), n = conn.dim();
  if (base.size() != r) throw std::invalid_argument("base point needs one value per coordinate");
  for (int v : conn.param_vars()) {
    if (!assigns(params, v)) throw std::invalid_argument("flat sections need every parameter assigned");
  }
  if (conn.frame() != Frame::kAffine) throw std::invalid_argument("flat sections use the affine frame");
  const std::uint32_t p = ctx.p();
  // Recenter: x_i -> x_i + b_i.
  std::vector<RatMatrix> centered;
  for (std::size_t i = 0; i < r; ++i) {
    RatMatrix B = evaluate(conn.B(i), params);
    for (std::size_t k = 0; k < r; ++k) {
      MultiPoly image = ctx.poly_var(conn.coord(k)) + ctx.constant(base[k]);
      B = B.map(B.ring(), [&](const RatFunc& f) { return f.substitute(conn.coord(k), image); });
    }
    centered.push_back(B);
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (!curvature_of(centered[i], conn.coord(i), Frame::kAffine, p).is_zero()) {
      throw std::domain_error("flat_section_basis: p-curvature is nonzero");
    }
  }
  MultiPoly monomial = ctx.constant(1);
  for (std::size_t i = 0; i < r; ++i) monomial = monomial * ctx.poly_var(conn.coord(i)).pow(p - 1);
  std::vector<std::vector<RatFunc>> out;
  Assignment origin;
  for (std::size_t i = 0; i < r; ++i) origin.push_back({conn.coord(i), 0});
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<RatFunc> F(n, RatFunc(ctx));
    F[k] = RatFunc(monomial);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::uint32_t t = 0; t + 1 < p; ++t) F = step(centered[i], conn.coord(i), Frame::kAffine, F);
    }
    if (r % 2) {
      for (auto& f : F) f = -f;
    }
    for (std::size_t i = 0; i < r; ++i) {
      auto d = step(centered[i], conn.coord(i), Frame::kAffine, F);
      for (const auto& e : d) {
        if (!e.is_zero()) throw std::logic_error("flat_section_basis: section is not flat");
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      Fp want = a == k ? 1 : 0;
      if (F[a].evaluate_poly(origin) != ctx.constant(want)) {
        throw std::logic_error("flat_section_basis: section misses its initial value");
      }
    }
    // Back to the original coordinates: x_i -> x_i - b_i.
    for (auto& f : F) {
      for (std::size_t i = 0; i < r; ++i) {
        MultiPoly image = ctx.poly_var(conn.coord(i)) - ctx.constant(base[i]);
        f = f.substitute(conn.coord(i), image).normalize();
      }
    }
    out.push_back(std::move(F));
  }
  return out;
}

bool trivializable_at_zero_test(const RatMatrix& C, int s) {
  auto cp = char_poly(C);
  const std::size_t n = C.size();
  for (std::size_t m = 1; m <= n; ++m) {
    RatFunc tw = cp[n - m].normalize();
    if (tw.is_zero()) continue;
    for (const auto& f : tw.den()) {
      if (f.form.depends_on(s)) throw std::invalid_argument("denominator depends on the pencil parameter");
    }
    if (tw.num().min_degree_in(s) < m) return false;
  }
  return true;
}

std::vector<MultiPoly> artin_schreier_expand(const MultiPoly& f, int v) {
  const Context& ctx = *f.ctx();
  const std::uint32_t p = ctx.p();
  const MultiPoly x = ctx.poly_var(v);
  std::vector<MultiPoly> out;
  MultiPoly rest = f;
  while (!rest.is_zero()) {
    // rest = q * (v - v^p) + a with deg_v a < p.
    MultiPoly q(ctx), rem = rest;
    while (rem.degree_in(v) >= p) {
      const std::uint32_t d = rem.degree_in(v);
      MultiPoly lead(ctx);
      for (const auto& [mono, coeff] : rem.split({v})) {
        if (mono.e[v] == d) lead = coeff;
      }
      // lead * v^d = -(lead * v^(d-p)) * (v - v^p) + lead * v^(d-p+1)
      MultiPoly t = lead * x.pow(d - p);
      q = q - t;
      rem = rem + t * (x - x.pow(p));
    }
    out.push_back(rem);
    rest = q;
  }
  return out;
}

SampleReport verify_isospectrality(const ConnectionFamily& conn, const std::vector<RatMatrix>& target,
                                   const VerifyPlan& plan) {
  if (target.size() != conn.rank()) throw std::invalid_argument("one target matrix per direction");
  const Context& ctx = conn.ctx();
  const std::uint32_t p = ctx.p();
  for (std::size_t i = 0; i < conn.rank(); ++i) ctx.var("u" + std::to_string(i + 1));
  SampleReport report;
  report.samples.resize(plan.samples);
  std::vector<int> drawn = conn.coords();
  drawn.insert(drawn.end(), plan.sampled_params.begin(), plan.sampled_params.end());
  parallel_for(plan.samples, [&](std::size_t k) {
    auto rng = sample_rng(plan.seed, p, k);
    SampleRecord& rec = report.samples[k];
    rec.index = k;
    for (;;) {
      Assignment point;
      for (int v : drawn) point.push_back({v, draw_residue(rng, p)});
      try {
        for (std::size_t i = 0; i < conn.rank(); ++i) (void)evaluate_poly(conn.B(i), point);
        std::vector<PolyMatrix> Cs, Ts;
        for (std::size_t i = 0; i < conn.rank(); ++i) {
          Assignment others;
          for (const auto& kv : point) {
            if (kv.first != conn.coord(i)) others.push_back(kv);
          }
          RatMatrix C = conn.frame() == Frame::kTorus ? torus_p_curvature(conn, i, others)
                                                      : p_curvature(conn, i, others);
          Cs.push_back(evaluate_poly(C, point));
          Ts.push_back(evaluate_poly(target[i], point));
        }
        for (const auto& [v, val] : point) rec.point.push_back({ctx.name(v), val});
        PencilCheck check = pencil_isospectral(Cs, Ts, plan.strategy, rng);
        rec.pass = check.isospectral;
        rec.strategy = strategy_name(check.used);
        rec.u_samples = check.u_samples;
        rec.log2_failure_bound = check.log2_failure_bound;
        rec.lhs_charpoly = std::move(check.lhs_charpoly);
        rec.rhs_charpoly = std::move(check.rhs_charpoly);
        return;
      } catch (const PoleError&) {
        if (++rec.resamples >= kMaxResamples) {
          rec.note = "resampling budget exhausted";
          return;
        }
      }
    }
  });
  for (const auto& r : report.samples) report.degenerate = report.degenerate || r.resamples >= kMaxResamples;
  return report;
}

}  // namespace pcurv
