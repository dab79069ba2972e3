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

#include "pcurv/charpoly.hpp"
#include "pcurv/matrix.hpp"

namespace pcurv {

enum class ShiftKind { kAdditive, kMultiplicative };

// nabla_i = T_i^{-1} B_i with T_i: x_i -> x_i + 1 (additive, orbit length the
// characteristic) or x_i -> q x_i (multiplicative, q of order `orbit` in the
// base field, whose characteristic does not divide `orbit`).
class ShiftConnection {
 public:
  static ShiftConnection additive(const Context& ctx, const std::vector<std::string>& coords,
                                  std::vector<RatMatrix> B);
  static ShiftConnection multiplicative(const Context& ctx, const std::vector<std::string>& coords,
                                        std::vector<RatMatrix> B, Fp q, std::uint32_t orbit);

  const Context& ctx() const { return *ctx_; }
  ShiftKind kind() const { return kind_; }
  std::size_t rank() const { return coords_.size(); }
  std::size_t dim() const { return B_.front().size(); }
  int coord(std::size_t i) const { return coords_.at(i); }
  const RatMatrix& B(std::size_t i) const { return B_.at(i); }
  Fp multiplier() const { return q_; }
  std::uint32_t orbit() const { return orbit_; }

  // B_i with coordinate j moved k steps along its shift.
  RatMatrix shifted(std::size_t i, std::size_t j, std::uint32_t k) const;

 private:
  ShiftConnection(const Context& ctx, ShiftKind kind, const std::vector<std::string>& coords,
                  std::vector<RatMatrix> B, Fp q, std::uint32_t orbit);
  const Context* ctx_;
  ShiftKind kind_;
  std::vector<int> coords_;
  std::vector<RatMatrix> B_;
  Fp q_ = 0;
  std::uint32_t orbit_ = 0;
};

// Ordered product B_i(x + (p-1)e_i) ... B_i(x + e_i) B_i(x).
RatMatrix p_curvature_additive(const ShiftConnection& conn, std::size_t i);
// Ordered product B_i(q^{p-1}x) ... B_i(qx) B_i(x).
RatMatrix p_curvature_multiplicative(const ShiftConnection& conn, std::size_t i);
// Dispatches on the kind.
RatMatrix shift_p_curvature(const ShiftConnection& conn, std::size_t i);

// B_i(shift_j x) B_j(x) = B_j(shift_i x) B_i(x) for all i < j.
bool shift_flatness_check(const ShiftConnection& conn);

// prod_{j = p-1}^{0} (1 + (q - 1) A_j) t, with t = I when `t` is empty.
RatMatrix orbit_product(const std::vector<RatMatrix>& A, const MultiPoly& q,
                        const RatMatrix* t = nullptr);
// (1 + (q^p - 1)/p * sum_j A_j) t^(p), with t^(p) the entrywise p-th power of
// the diagonal twist t.
RatMatrix orbit_product_target(const std::vector<RatMatrix>& A, const MultiPoly& q,
                               const RatMatrix* t = nullptr);

}  // namespace pcurv
