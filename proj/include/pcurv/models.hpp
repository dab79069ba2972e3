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
#include <string>
#include <vector>

#include "pcurv/connection.hpp"
#include "pcurv/difference.hpp"
#include "pcurv/matrix.hpp"

namespace pcurv {

// ---------------------------------------------------------------- sl2 data

// V(m) with basis v_0..v_m: h v_k = (m - 2k) v_k, f v_k = (k+1) v_{k+1},
// e v_k = (m - k + 1) v_{k-1}.
struct Sl2Irrep {
  unsigned m = 0;
  FpMatrix e, f, h;
};

Sl2Irrep sl2_irrep(const PrimeField& F, unsigned m);

FpMatrix kron(const FpMatrix& a, const FpMatrix& b);

// V(m_1) x ... x V(m_r).
class Sl2Tensor {
 public:
  Sl2Tensor(const PrimeField& F, const std::vector<unsigned>& reps);
  std::size_t dim() const { return dim_; }
  std::size_t factors() const { return reps_.size(); }
  const Sl2Irrep& irrep(std::size_t i) const { return reps_.at(i); }
  // X acting on factor i, identity elsewhere.
  FpMatrix e(std::size_t i) const;
  FpMatrix f(std::size_t i) const;
  FpMatrix h(std::size_t i) const;
  // e_i f_j + f_i e_j + h_i h_j / 2; requires odd characteristic.
  FpMatrix omega(std::size_t i, std::size_t j) const;
  // Diagonal action of X.
  FpMatrix total_e() const;
  FpMatrix total_f() const;
  FpMatrix total_h() const;

 private:
  const PrimeField* F_;
  std::vector<Sl2Irrep> reps_;
  std::size_t dim_ = 1;
  FpMatrix embed(std::size_t i, const FpMatrix& x) const;
};

// ---------------------------------------------------------------- zoo

// A differential model and its comparison target, built from the displayed
// closed form rather than from the computed p-curvature.
struct DiffModel {
  ConnectionFamily conn;
  std::vector<RatMatrix> target;
};

// d - hbar sum_i sum_{j != i} Omega^{ij}/(x_i - x_j) dx_i; hbar periodic.
// Target (hbar - hbar^p) sum_{j != i} Omega^{ij}/(x_i^p - x_j^p).
DiffModel kz_pencil(const Context& ctx, const std::vector<unsigned>& reps);

// B_i = eta h^{(i)} + hbar sum_{j != i} Omega^{ij}/(x_i - x_j); hbar periodic,
// eta (the Cartan coordinate of the irregular term) infinitesimal.
// Target -eta^p h^{(i)} + (hbar - hbar^p) sum_{j != i} Omega^{ij}/(x_i^p - x_j^p).
DiffModel irregular_kz(const Context& ctx, const std::vector<unsigned>& reps);

// Affine coordinate a on the root line, B = hbar K/a - sum_j x_j h^{(j)}/2
// with K = (Delta(e)Delta(f) + Delta(f)Delta(e))/2. The loop generator acts
// through its z^1 term only, so each evaluation point x_j enters linearly;
// hbar periodic, x_j infinitesimal.
// Target (hbar - hbar^p) K/a^p + sum_j x_j^p h^{(j)}/2.
DiffModel irregular_casimir_sl2(const Context& ctx, const std::vector<unsigned>& reps);

// d - lambda diag(1, -1) - sign * (c/x) sigma on kW for W = S_2; c periodic,
// lambda infinitesimal. Target -lambda^p diag(1,-1) + sign (c - c^p)/x^p sigma.
DiffModel dunkl_irregular_a1(const Context& ctx, int sign = 1);

// Nil-Hecke module V_{inf,lambda} for A_1 in the basis {1, sbar}: omega acts
// by [[lambda, 1], [0, -lambda]], sbar by [[0, 0], [1, 0]].
struct NilHeckeA1 {
  RatMatrix omega;  // entries in lambda
  RatMatrix sbar;
  RatMatrix s_omega;  // action of s(omega) = -omega
};
NilHeckeA1 nil_hecke_a1(const Context& ctx, const MultiPoly& lambda);

// theta - omega - z sbar in the torus frame theta = z d/dz; lambda is an
// affine (not homogeneous) parameter. Target -(omega + z^p sbar) on
// V_{inf, lambda^p - lambda}.
DiffModel toda_rank1(const Context& ctx);

// d - (1/x) [[0, 1], [s, 0]]; parameter s.
DiffModel pseudo_pencil_example(const Context& ctx);
// Displayed closed form of its p-curvature.
RatMatrix pseudo_pencil_closed_form(const Context& ctx);

// ---------------------------------------------------------------- Gaudin / CM

// S_n acting on {0..n-1}; element k of `elements` is a permutation w with
// w[i] the image of i.
struct SymmetricGroup {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> elements;
  std::size_t index(const std::vector<std::size_t>& w) const;
  std::vector<std::size_t> compose(const std::vector<std::size_t>& a,
                                   const std::vector<std::size_t>& b) const;  // a after b
  std::vector<std::size_t> inverse(const std::vector<std::size_t>& w) const;
  std::vector<std::size_t> transposition(std::size_t i, std::size_t j) const;
  // Left multiplication by g in the group-element basis.
  FpMatrix left_mult(const PrimeField& F, const std::vector<std::size_t>& g) const;
};
SymmetricGroup symmetric_group(std::size_t n);

// Coordinates h = (x_1..x_n), lambda = (lambda_1..lambda_n) in the
// permutation representation, coupling c. M_j = G(eps_j) where
// G(y) = y|_{V^0_lambda} + c sum_{i<j} alpha_ij(y)/alpha_ij(h) s_ij and y acts
// on the basis vector w by lambda(w^{-1} y).
std::vector<RatMatrix> gaudin_slots(const Context& ctx, std::size_t n);
// G_i = G(omega_i^vee), omega_i^vee = eps_1 + .. + eps_i - (i/n)(eps_1 + .. + eps_n);
// requires the characteristic not to divide n. For n = 2 this is
// [[y, c/x], [c/x, -y]] with y = (lambda_1 - lambda_2)/2, x = x_1 - x_2.
std::vector<RatMatrix> gaudin_operators(const Context& ctx, std::size_t n);

// sum_j mu_j E_jj + sum_{i != j} c/(x_i - x_j) E_ij.
RatMatrix cm_lax(const Context& ctx, std::size_t n);
// H_k = Tr wedge^k of the Lax matrix, k = 1..n.
std::vector<RatFunc> cm_hamiltonians(const Context& ctx, std::size_t n);
// D_k = H_k(c, h, M) - e_k(lambda) Id, k = 1..n, with the commuting slots M_j
// substituted for mu_j. Throws std::logic_error if the slots do not commute.
std::vector<RatMatrix> cm_operator_identity(const Context& ctx, std::size_t n);

// ---------------------------------------------------------------- qKZ

struct ShiftModel {
  ShiftConnection conn;
  RatMatrix target;
};

// R(q, z) with the displayed entries.
RatMatrix r_matrix(const Context& ctx, const MultiPoly& q, const MultiPoly& z);

// T^{-1} R(q, z) diag(t, 1/t) over F_ell with shift z -> qroot z, qroot of
// order p. Target R(q^p, z^p) diag(t^p, t^-p) with z^p - 1 = prod_j (z - qroot^j).
ShiftModel qkz_model(const Context& ctx_ell, std::uint32_t p);

// T^{-1} R_add(s, u) diag(t, 1/t) over F_p with shift u -> u + 1,
// R_add(s, u) = 1 + (s/u) [[1,1],[1,1]]. Target
// R_add(s^p - s, u^p - u) diag(t^p, t^-p) with u^p - u = prod_j (u - j).
ShiftModel qkz_additive_model(const Context& ctx);

// ---------------------------------------------------------------- registry

struct ModelInfo {
  std::string id;
  std::string summary;
  std::string prime_constraint;
  // Primes exercised when none is given; for qkz these are the p of the
  // pinned (p, ell) pairs.
  std::vector<std::uint32_t> pinned_primes;
};
const std::vector<ModelInfo>& model_registry();
const ModelInfo* find_model(const std::string& id);

}  // namespace pcurv
