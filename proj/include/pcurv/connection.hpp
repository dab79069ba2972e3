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
#include <utility>
#include <vector>

#include "pcurv/charpoly.hpp"
#include "pcurv/matrix.hpp"
#include "pcurv/sampling.hpp"

namespace pcurv {

enum class ParamKind { kPeriodic, kInfinitesimal };

// kAffine: derivation d/dx with d^[p] = 0. kTorus: theta = x d/dx with
// theta^[p] = theta.
enum class Frame { kAffine, kTorus };

struct Parameter {
  std::string name;
  ParamKind kind = ParamKind::kPeriodic;
};

// (variable index, value) pairs.
using Assignment = std::vector<std::pair<int, Fp>>;

// d - sum_i B_i dx_i with B_i over RatFunc in the coordinates and polynomial
// in the parameters.
class ConnectionFamily {
 public:
  ConnectionFamily(const Context& ctx, const std::vector<std::string>& coords,
                   std::vector<Parameter> params, std::vector<RatMatrix> B,
                   Frame frame = Frame::kAffine);

  // B_i = sum_j s_j B_ij with every B_ij free of the parameters.
  static ConnectionFamily pencil(const Context& ctx, const std::vector<std::string>& coords,
                                 std::vector<Parameter> params,
                                 std::vector<std::vector<RatMatrix>> terms,
                                 Frame frame = Frame::kAffine);

  const Context& ctx() const { return *ctx_; }
  std::size_t rank() const { return coords_.size(); }
  std::size_t dim() const { return B_.empty() ? 0 : B_.front().size(); }
  const std::vector<int>& coords() const { return coords_; }
  int coord(std::size_t i) const { return coords_.at(i); }
  const std::vector<Parameter>& params() const { return params_; }
  std::vector<int> param_vars() const;
  Frame frame() const { return frame_; }
  const RatMatrix& B(std::size_t i) const { return B_.at(i); }
  bool is_pencil() const { return !terms_.empty(); }
  // terms[i][j] = B_ij; empty unless built by pencil().
  const std::vector<std::vector<RatMatrix>>& pencil_terms() const { return terms_; }

  // Symbolic flatness: d_i B_l - d_l B_i = [B_i, B_l] for all i < l.
  bool is_flat() const;

 private:
  const Context* ctx_;
  std::vector<int> coords_;
  std::vector<Parameter> params_;
  std::vector<RatMatrix> B_;
  std::vector<std::vector<RatMatrix>> terms_;
  Frame frame_;
};

// d_i v - B_i v in the affine frame, x_i d_i v - B_i v in the torus frame.
// `fixed` is applied to B_i first and must not assign coordinate i.
std::vector<RatFunc> covariant_apply(const ConnectionFamily& conn, std::size_t i,
                                     const Assignment& fixed, const std::vector<RatFunc>& v);

// Matrix of nabla_i^p (affine) or nabla_theta^p - nabla_theta (torus), with
// `fixed` applied to B_i first. With check_linearity the operator is also
// applied to a random non-constant section and compared against the matrix.
RatMatrix p_curvature(const ConnectionFamily& conn, std::size_t i, const Assignment& fixed = {},
                      bool check_linearity = false);

// Torus-frame p-curvature computed twice: directly, and as z^p times the
// affine p-curvature of d_z - B/z. Throws std::logic_error on disagreement.
RatMatrix torus_p_curvature(const ConnectionFamily& conn, std::size_t i,
                            const Assignment& fixed = {});

// sum_j (s_j - s_j^p) B_ij^(1) per direction; every parameter periodic.
std::vector<RatMatrix> b_star(const ConnectionFamily& pencil);
// Periodic terms as in b_star, infinitesimal terms contribute -s_j^p B_ij^(1).
std::vector<RatMatrix> b_star_mixed(const ConnectionFamily& pencil);

// Flat sections through each basis vector at `base` (one value per
// coordinate), by the explicit iterated-derivative formula. Parameters must be
// fully assigned. Throws std::domain_error when the p-curvature is nonzero.
// Sections are returned in the original coordinates; F_k(base) = e_k.
std::vector<std::vector<RatFunc>> flat_section_basis(const ConnectionFamily& conn,
                                                     const Assignment& params,
                                                     const std::vector<Fp>& base);

// True iff Tr wedge^m C is divisible by s^m for every m.
bool trivializable_at_zero_test(const RatMatrix& C, int s);

// Coefficients a_k, each of degree < p in v, with f = sum_k a_k (v - v^p)^k.
std::vector<MultiPoly> artin_schreier_expand(const MultiPoly& f, int v);

struct VerifyPlan {
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::kAuto;
  // Parameters drawn alongside the coordinates; the rest stay symbolic.
  std::vector<int> sampled_params;
};

// Per sample: draw the coordinates off the poles, compute each C_i there and
// compare the pencils sum u_i C_i and sum u_i target_i.
SampleReport verify_isospectrality(const ConnectionFamily& conn,
                                   const std::vector<RatMatrix>& target, const VerifyPlan& plan);

}  // namespace pcurv
