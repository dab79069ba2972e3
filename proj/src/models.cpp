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

#include "pcurv/models.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pcurv {

namespace {

void require_odd(const Context& ctx, const char* model) {
  if (ctx.p() == 2) throw std::invalid_argument(std::string(model) + " requires p > 2");
}

RatMatrix lift(const Context& ctx, const FpMatrix& m) { return to_rat_matrix(ctx, m); }

RatFunc rat(const MultiPoly& f) { return RatFunc(f); }

}  // namespace

// ---------------------------------------------------------------- sl2

Sl2Irrep sl2_irrep(const PrimeField& F, unsigned m) {
  FieldRing R{&F};
  Sl2Irrep out;
  out.m = m;
  out.e = FpMatrix(R, m + 1);
  out.f = FpMatrix(R, m + 1);
  out.h = FpMatrix(R, m + 1);
  for (unsigned k = 0; k <= m; ++k) {
    out.h(k, k) = F.reduce(static_cast<std::int64_t>(m) - 2 * static_cast<std::int64_t>(k));
    if (k >= 1) out.e(k - 1, k) = F.reduce(m - k + 1);
    if (k + 1 <= m) out.f(k + 1, k) = F.reduce(k + 1);
  }
  return out;
}

FpMatrix kron(const FpMatrix& a, const FpMatrix& b) {
  const std::size_t na = a.size(), nb = b.size();
  const PrimeField& F = *a.ring().F;
  FpMatrix out(a.ring(), na * nb);
  for (std::size_t i1 = 0; i1 < na; ++i1)
    for (std::size_t j1 = 0; j1 < na; ++j1) {
      if (a(i1, j1) == 0) continue;
      for (std::size_t i2 = 0; i2 < nb; ++i2)
        for (std::size_t j2 = 0; j2 < nb; ++j2)
          out(i1 * nb + i2, j1 * nb + j2) = F.mul(a(i1, j1), b(i2, j2));
    }
  return out;
}

Sl2Tensor::Sl2Tensor(const PrimeField& F, const std::vector<unsigned>& reps) : F_(&F) {
  if (reps.empty()) throw std::invalid_argument("at least one tensor factor required");
  for (unsigned m : reps) {
    reps_.push_back(sl2_irrep(F, m));
    dim_ *= m + 1;
  }
}

FpMatrix Sl2Tensor::embed(std::size_t i, const FpMatrix& x) const {
  FieldRing R{F_};
  FpMatrix acc = FpMatrix::identity(R, 1);
  for (std::size_t k = 0; k < reps_.size(); ++k) {
    acc = kron(acc, k == i ? x : FpMatrix::identity(R, reps_[k].m + 1));
  }
  return acc;
}

FpMatrix Sl2Tensor::e(std::size_t i) const { return embed(i, reps_.at(i).e); }
FpMatrix Sl2Tensor::f(std::size_t i) const { return embed(i, reps_.at(i).f); }
FpMatrix Sl2Tensor::h(std::size_t i) const { return embed(i, reps_.at(i).h); }

FpMatrix Sl2Tensor::omega(std::size_t i, std::size_t j) const {
  if (F_->modulus() == 2) throw std::invalid_argument("Omega needs 1/2");
  return e(i) * f(j) + f(i) * e(j) + (h(i) * h(j)).scale(F_->inv(2));
}

FpMatrix Sl2Tensor::total_e() const {
  FpMatrix acc(FieldRing{F_}, dim_);
  for (std::size_t i = 0; i < reps_.size(); ++i) acc = acc + e(i);
  return acc;
}
FpMatrix Sl2Tensor::total_f() const {
  FpMatrix acc(FieldRing{F_}, dim_);
  for (std::size_t i = 0; i < reps_.size(); ++i) acc = acc + f(i);
  return acc;
}
FpMatrix Sl2Tensor::total_h() const {
  FpMatrix acc(FieldRing{F_}, dim_);
  for (std::size_t i = 0; i < reps_.size(); ++i) acc = acc + h(i);
  return acc;
}

// ---------------------------------------------------------------- KZ family

namespace {

std::vector<std::string> coord_names(const std::string& stem, std::size_t r) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= r; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

// sum_{j != i} Omega^{ij} / (x_i - x_j)^e
RatMatrix kz_residue_sum(const Context& ctx, const Sl2Tensor& T, std::size_t i, std::uint32_t e) {
  RatMatrix acc(RatRing{&ctx}, T.dim());
  for (std::size_t j = 0; j < T.factors(); ++j) {
    if (j == i) continue;
    MultiPoly diff = ctx.poly_var("x" + std::to_string(i + 1)) - ctx.poly_var("x" + std::to_string(j + 1));
    acc = acc + lift(ctx, T.omega(i, j)).scale(RatFunc::inv_linear(diff, e));
  }
  return acc;
}

}  // namespace

DiffModel kz_pencil(const Context& ctx, const std::vector<unsigned>& reps) {
  require_odd(ctx, "kz");
  Sl2Tensor T(ctx.field(), reps);
  const std::size_t r = reps.size();
  if (r < 2) throw std::invalid_argument("kz needs at least two points");
  std::vector<std::vector<RatMatrix>> terms;
  for (std::size_t i = 0; i < r; ++i) terms.push_back({kz_residue_sum(ctx, T, i, 1)});
  auto conn = ConnectionFamily::pencil(ctx, coord_names("x", r), {{"hbar", ParamKind::kPeriodic}},
                                       std::move(terms));
  // 1/(x_i^p - x_j^p) = 1/(x_i - x_j)^p in characteristic p.
  MultiPoly hbar = ctx.poly_var("hbar");
  RatFunc coeff = rat(hbar - hbar.pow(ctx.p()));
  std::vector<RatMatrix> target;
  for (std::size_t i = 0; i < r; ++i) target.push_back(kz_residue_sum(ctx, T, i, ctx.p()).scale(coeff));
  return {std::move(conn), std::move(target)};
}

DiffModel irregular_kz(const Context& ctx, const std::vector<unsigned>& reps) {
  require_odd(ctx, "kz-irregular");
  Sl2Tensor T(ctx.field(), reps);
  const std::size_t r = reps.size();
  if (r < 2) throw std::invalid_argument("kz-irregular needs at least two points");
  std::vector<std::vector<RatMatrix>> terms;
  for (std::size_t i = 0; i < r; ++i) {
    terms.push_back({kz_residue_sum(ctx, T, i, 1), lift(ctx, T.h(i))});
  }
  auto conn = ConnectionFamily::pencil(
      ctx, coord_names("x", r), {{"hbar", ParamKind::kPeriodic}, {"eta", ParamKind::kInfinitesimal}},
      std::move(terms));
  const std::uint32_t p = ctx.p();
  MultiPoly hbar = ctx.poly_var("hbar"), eta = ctx.poly_var("eta");
  std::vector<RatMatrix> target;
  for (std::size_t i = 0; i < r; ++i) {
    target.push_back(lift(ctx, T.h(i)).scale(rat(-eta.pow(p))) +
                     kz_residue_sum(ctx, T, i, p).scale(rat(hbar - hbar.pow(p))));
  }
  return {std::move(conn), std::move(target)};
}

DiffModel irregular_casimir_sl2(const Context& ctx, const std::vector<unsigned>& reps) {
  require_odd(ctx, "casimir-irregular");
  Sl2Tensor T(ctx.field(), reps);
  const PrimeField& F = ctx.field();
  const std::uint32_t p = ctx.p();
  const Fp half = F.inv(2);
  FpMatrix K = (T.total_e() * T.total_f() + T.total_f() * T.total_e()).scale(half);
  MultiPoly a = ctx.poly_var("a");
  std::vector<Parameter> params{{"hbar", ParamKind::kPeriodic}};
  std::vector<RatMatrix> row{lift(ctx, K).scale(RatFunc::inv_linear(a))};
  for (std::size_t j = 0; j < reps.size(); ++j) {
    params.push_back({"x" + std::to_string(j + 1), ParamKind::kInfinitesimal});
    row.push_back(lift(ctx, T.h(j).scale(F.neg(half))));
  }
  auto conn = ConnectionFamily::pencil(ctx, {"a"}, params, {row});
  MultiPoly hbar = ctx.poly_var("hbar");
  RatMatrix target = lift(ctx, K).scale(RatFunc::inv_linear(a, p)).scale(rat(hbar - hbar.pow(p)));
  for (std::size_t j = 0; j < reps.size(); ++j) {
    MultiPoly xj = ctx.poly_var("x" + std::to_string(j + 1));
    target = target + lift(ctx, T.h(j).scale(half)).scale(rat(xj.pow(p)));
  }
  return {std::move(conn), {target}};
}

DiffModel dunkl_irregular_a1(const Context& ctx, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("reflection sign must be +1 or -1");
  const PrimeField& F = ctx.field();
  RatRing R{&ctx};
  const std::uint32_t p = ctx.p();
  MultiPoly x = ctx.poly_var("x");
  Fp sg = sign == 1 ? 1 : F.neg(1);
  RatMatrix sigma = RatMatrix::from_rows(R, {{R.zero(), R.one()}, {R.one(), R.zero()}});
  RatMatrix U = RatMatrix::from_rows(R, {{R.one(), R.zero()}, {R.zero(), R.from_fp(F.neg(1))}});
  auto conn = ConnectionFamily::pencil(
      ctx, {"x"}, {{"c", ParamKind::kPeriodic}, {"lambda", ParamKind::kInfinitesimal}},
      {{sigma.scale(RatFunc::inv_linear(x).scale(sg)), U}});
  MultiPoly c = ctx.poly_var("c"), lambda = ctx.poly_var("lambda");
  RatMatrix target = U.scale(rat(-lambda.pow(p))) +
                     sigma.scale(RatFunc::inv_linear(x, p) * rat((c - c.pow(p)).scale(sg)));
  return {std::move(conn), {target}};
}

NilHeckeA1 nil_hecke_a1(const Context& ctx, const MultiPoly& lambda) {
  RatRing R{&ctx};
  NilHeckeA1 out;
  out.omega = RatMatrix::from_rows(R, {{rat(lambda), R.one()}, {R.zero(), rat(-lambda)}});
  out.sbar = RatMatrix::from_rows(R, {{R.zero(), R.zero()}, {R.one(), R.zero()}});
  out.s_omega = -out.omega;
  return out;
}

DiffModel toda_rank1(const Context& ctx) {
  MultiPoly lambda = ctx.poly_var("lambda"), z = ctx.poly_var("z");
  auto nh = nil_hecke_a1(ctx, lambda);
  RatMatrix B = nh.omega + nh.sbar.scale(rat(z));
  ConnectionFamily conn(ctx, {"z"}, {{"lambda", ParamKind::kPeriodic}}, {B}, Frame::kTorus);
  auto twisted = nil_hecke_a1(ctx, lambda.pow(ctx.p()) - lambda);
  RatMatrix target = -(twisted.omega + twisted.sbar.scale(rat(z.pow(ctx.p()))));
  return {std::move(conn), {target}};
}

DiffModel pseudo_pencil_example(const Context& ctx) {
  RatRing R{&ctx};
  MultiPoly x = ctx.poly_var("x"), s = ctx.poly_var("s");
  RatFunc ix = RatFunc::inv_linear(x);
  RatMatrix B = RatMatrix::from_rows(R, {{R.zero(), ix}, {ix * rat(s), R.zero()}});
  ConnectionFamily conn(ctx, {"x"}, {{"s", ParamKind::kPeriodic}}, {B});
  return {std::move(conn), {pseudo_pencil_closed_form(ctx)}};
}

RatMatrix pseudo_pencil_closed_form(const Context& ctx) {
  RatRing R{&ctx};
  const std::uint32_t p = ctx.p();
  MultiPoly x = ctx.poly_var("x"), s = ctx.poly_var("s");
  RatFunc ixp = RatFunc::inv_linear(x, p);
  RatFunc S = rat(s);
  if (p == 2) {
    return RatMatrix::from_rows(R, {{S, R.one()}, {S, S}}).scale(ixp);
  }
  MultiPoly one = ctx.constant(1);
  return RatMatrix::from_rows(R, {{R.zero(), rat(one - s.pow((p - 1) / 2))},
                                  {rat(s - s.pow((p + 1) / 2)), R.zero()}})
      .scale(ixp);
}

// ---------------------------------------------------------------- S_n

std::size_t SymmetricGroup::index(const std::vector<std::size_t>& w) const {
  auto it = std::find(elements.begin(), elements.end(), w);
  if (it == elements.end()) throw std::invalid_argument("not a permutation of the right size");
  return static_cast<std::size_t>(it - elements.begin());
}

std::vector<std::size_t> SymmetricGroup::compose(const std::vector<std::size_t>& a,
                                                 const std::vector<std::size_t>& b) const {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = a[b[i]];
  return out;
}

std::vector<std::size_t> SymmetricGroup::inverse(const std::vector<std::size_t>& w) const {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[w[i]] = i;
  return out;
}

std::vector<std::size_t> SymmetricGroup::transposition(std::size_t i, std::size_t j) const {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), 0);
  std::swap(out[i], out[j]);
  return out;
}

FpMatrix SymmetricGroup::left_mult(const PrimeField& F, const std::vector<std::size_t>& g) const {
  FpMatrix out(FieldRing{&F}, elements.size());
  for (std::size_t k = 0; k < elements.size(); ++k) out(index(compose(g, elements[k])), k) = 1;
  return out;
}

SymmetricGroup symmetric_group(std::size_t n) {
  if (n == 0) throw std::invalid_argument("S_0 is not supported");
  SymmetricGroup G;
  G.n = n;
  std::vector<std::size_t> w(n);
  std::iota(w.begin(), w.end(), 0);
  do {
    G.elements.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return G;
}

std::vector<RatMatrix> gaudin_slots(const Context& ctx, std::size_t n) {
  if (n < 2 || n > 3) throw std::invalid_argument("Gaudin operators are provided for n = 2, 3");
  const PrimeField& F = ctx.field();
  SymmetricGroup G = symmetric_group(n);
  RatRing R{&ctx};
  std::vector<RatMatrix> out;
  for (std::size_t j = 0; j < n; ++j) {
    RatMatrix M(R, G.elements.size());
    for (std::size_t k = 0; k < G.elements.size(); ++k) {
      std::size_t slot = G.inverse(G.elements[k])[j];
      M(k, k) = rat(ctx.poly_var("lambda" + std::to_string(slot + 1)));
    }
    MultiPoly c = ctx.poly_var("c");
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        // alpha_ab(eps_j) = [j == a] - [j == b]
        if (j != a && j != b) continue;
        MultiPoly diff = ctx.poly_var("x" + std::to_string(a + 1)) - ctx.poly_var("x" + std::to_string(b + 1));
        RatFunc coeff = RatFunc::inv_linear(diff) * rat(j == a ? c : -c);
        M = M + lift(ctx, G.left_mult(F, G.transposition(a, b))).scale(coeff);
      }
    }
    out.push_back(M);
  }
  return out;
}

std::vector<RatMatrix> gaudin_operators(const Context& ctx, std::size_t n) {
  if (n % ctx.p() == 0) throw std::invalid_argument("fundamental coweights need p not dividing n");
  const PrimeField& F = ctx.field();
  auto M = gaudin_slots(ctx, n);
  RatMatrix total(M.front().ring(), M.front().size());
  for (const auto& m : M) total = total + m;
  std::vector<RatMatrix> out;
  RatMatrix partial(total.ring(), total.size());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    partial = partial + M[i];
    Fp frac = F.mul(F.reduce(static_cast<std::int64_t>(i + 1)), F.inv(F.reduce(static_cast<std::int64_t>(n))));
    out.push_back(normalize(partial - total.scale(RatFunc::constant(ctx, frac))));
  }
  return out;
}

RatMatrix cm_lax(const Context& ctx, std::size_t n) {
  RatRing R{&ctx};
  RatMatrix L(R, n);
  MultiPoly c = ctx.poly_var("c");
  for (std::size_t i = 0; i < n; ++i) {
    L(i, i) = rat(ctx.poly_var("mu" + std::to_string(i + 1)));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      MultiPoly diff = ctx.poly_var("x" + std::to_string(i + 1)) - ctx.poly_var("x" + std::to_string(j + 1));
      L(i, j) = RatFunc::inv_linear(diff) * rat(c);
    }
  }
  return L;
}

std::vector<RatFunc> cm_hamiltonians(const Context& ctx, std::size_t n) {
  RatMatrix L = cm_lax(ctx, n);
  std::vector<RatFunc> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(trace_wedge(L, k).normalize());
  return out;
}

std::vector<RatMatrix> cm_operator_identity(const Context& ctx, std::size_t n) {
  auto M = gaudin_slots(ctx, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!commutator(M[i], M[j]).is_zero()) throw std::logic_error("Gaudin slot operators do not commute");
  auto H = cm_hamiltonians(ctx, n);
  std::vector<int> mu;
  for (std::size_t j = 0; j < n; ++j) mu.push_back(ctx.var("mu" + std::to_string(j + 1)));
  const RatRing& R = M.front().ring();
  const std::size_t dim = M.front().size();
  std::vector<RatMatrix> defects;
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix acc(R, dim);
    for (const auto& [mono, coeff] : H[k - 1].split(mu)) {
      RatMatrix term = RatMatrix::identity(R, dim);
      for (std::size_t j = 0; j < n; ++j) {
        for (unsigned e = 0; e < mono.e[mu[j]]; ++e) term = term * M[j];
      }
      acc = acc + term.scale(coeff);
    }
    // e_k(lambda_1..lambda_n)
    MultiPoly ek(ctx);
    std::vector<bool> pick(n, false);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(k), pick.end(), true);
    do {
      MultiPoly prod = ctx.constant(1);
      for (std::size_t j = 0; j < n; ++j)
        if (pick[j]) prod = prod * ctx.poly_var("lambda" + std::to_string(j + 1));
      ek = ek + prod;
    } while (std::next_permutation(pick.begin(), pick.end()));
    defects.push_back(normalize(acc - RatMatrix::identity(R, dim).scale(rat(ek))));
  }
  return defects;
}

// ---------------------------------------------------------------- qKZ

RatMatrix r_matrix(const Context& ctx, const MultiPoly& q, const MultiPoly& z) {
  RatRing R{&ctx};
  MultiPoly one = ctx.constant(1);
  RatFunc den = RatFunc::inv_linear(z - one);
  RatFunc diag = rat(q * z - one) * den;
  return RatMatrix::from_rows(R, {{diag, rat((q - one) * z) * den}, {rat(q - one) * den, diag}});
}

ShiftModel qkz_model(const Context& ctx, std::uint32_t p) {
  const PrimeField& F = ctx.field();
  Fp root = find_order_p_element(F, p);
  RatRing R{&ctx};
  MultiPoly q = ctx.poly_var("q"), t = ctx.poly_var("t"), z = ctx.poly_var("z");
  MultiPoly one = ctx.constant(1);
  RatMatrix twist = RatMatrix::from_rows(R, {{rat(t), R.zero()}, {R.zero(), RatFunc::inv_linear(t)}});
  auto conn = ShiftConnection::multiplicative(ctx, {"z"}, {r_matrix(ctx, q, z) * twist}, root, p);
  // 1/(z^p - 1) = prod_j 1/(z - root^j)
  RatFunc inv_zp = RatFunc::constant(ctx, 1);
  for (std::uint32_t j = 0; j < p; ++j) inv_zp = inv_zp * RatFunc::inv_linear(z - ctx.constant(F.pow(root, j)));
  MultiPoly qp = q.pow(p), zp = z.pow(p);
  RatFunc diag = rat(qp * zp - one) * inv_zp;
  RatMatrix Rp = RatMatrix::from_rows(R, {{diag, rat((qp - one) * zp) * inv_zp}, {rat(qp - one) * inv_zp, diag}});
  RatMatrix twist_p =
      RatMatrix::from_rows(R, {{rat(t.pow(p)), R.zero()}, {R.zero(), RatFunc::inv_linear(t, p)}});
  return {std::move(conn), Rp * twist_p};
}

ShiftModel qkz_additive_model(const Context& ctx) {
  RatRing R{&ctx};
  const std::uint32_t p = ctx.p();
  MultiPoly s = ctx.poly_var("s"), t = ctx.poly_var("t"), u = ctx.poly_var("u");
  RatMatrix J = RatMatrix::from_rows(R, {{R.one(), R.one()}, {R.one(), R.one()}});
  RatMatrix I = RatMatrix::identity(R, 2);
  RatMatrix twist = RatMatrix::from_rows(R, {{rat(t), R.zero()}, {R.zero(), RatFunc::inv_linear(t)}});
  RatMatrix B = (I + J.scale(rat(s) * RatFunc::inv_linear(u))) * twist;
  auto conn = ShiftConnection::additive(ctx, {"u"}, {B});
  // 1/(u^p - u) = prod_j 1/(u - j)
  RatFunc inv = RatFunc::constant(ctx, 1);
  for (std::uint32_t j = 0; j < p; ++j) inv = inv * RatFunc::inv_linear(u - ctx.constant(j));
  RatMatrix twist_p =
      RatMatrix::from_rows(R, {{rat(t.pow(p)), R.zero()}, {R.zero(), RatFunc::inv_linear(t, p)}});
  RatMatrix target = (I + J.scale(rat(s.pow(p) - s) * inv)) * twist_p;
  return {std::move(conn), target};
}

// ---------------------------------------------------------------- registry

const std::vector<ModelInfo>& model_registry() {
  static const std::vector<ModelInfo> reg = {
      {"kz", "KZ pencil for sl2, V(m_1) x ... x V(m_r)", "p odd prime", {5, 7, 11}},
      {"kz-irregular", "irregular KZ for sl2 with Cartan term eta*h", "p odd prime", {5, 7}},
      {"casimir-irregular", "irregular Casimir connection, sl2 instance", "p odd prime", {5, 7}},
      {"dunkl-a1", "irregular Dunkl connection for A_1", "p odd prime", {5, 7, 11}},
      {"gaudin-sn", "Gaudin operators on kS_n, n = 2, 3", "p odd prime not dividing n", {5, 7}},
      {"cm-identity", "Calogero-Moser operator identity on kS_n, n = 2, 3", "p odd prime", {7, 11}},
      {"toda-a1", "rank-1 Toda connection on the nil-Hecke module", "p odd prime", {5, 7}},
      {"qkz", "qKZ R-matrix difference connection over F_ell", "p odd prime, ell prime with p | ell - 1",
       {3, 5, 7}},
      {"qkz-additive", "additive limit of the qKZ connection", "p odd prime", {3, 5, 7}},
      {"pseudo-pencil", "non-trivializable pseudo-pencil d - (1/x)[[0,1],[s,0]]", "p prime", {2, 3, 5, 7}},
  };
  return reg;
}

const ModelInfo* find_model(const std::string& id) {
  for (const auto& m : model_registry()) {
    if (m.id == id) return &m;
  }
  return nullptr;
}

}  // namespace pcurv
