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

#include "pcurv/difference.hpp"

#include <stdexcept>

namespace pcurv {

ShiftConnection::ShiftConnection(const Context& ctx, ShiftKind kind,
                                 const std::vector<std::string>& coords, std::vector<RatMatrix> B,
                                 Fp q, std::uint32_t orbit)
    : ctx_(&ctx), kind_(kind), B_(std::move(B)), q_(q), orbit_(orbit) {
  if (coords.size() != B_.size() || B_.empty()) {
    throw std::invalid_argument("one shift matrix per coordinate required");
  }
  for (const auto& c : coords) coords_.push_back(ctx.var(c));
  for (const auto& b : B_) {
    if (b.size() != B_.front().size()) throw std::invalid_argument("shift matrices differ in size");
    auto cp = char_poly(b);
    if (cp.front().is_zero()) throw std::invalid_argument("shift matrix is not invertible");
  }
}

ShiftConnection ShiftConnection::additive(const Context& ctx, const std::vector<std::string>& coords,
                                          std::vector<RatMatrix> B) {
  return ShiftConnection(ctx, ShiftKind::kAdditive, coords, std::move(B), 0, ctx.p());
}

ShiftConnection ShiftConnection::multiplicative(const Context& ctx,
                                                const std::vector<std::string>& coords,
                                                std::vector<RatMatrix> B, Fp q,
                                                std::uint32_t orbit) {
  if (orbit < 2 || orbit % ctx.p() == 0) {
    throw std::invalid_argument("orbit length must be at least 2 and prime to the characteristic");
  }
  if (multiplicative_order(ctx.field(), q) != orbit) {
    throw std::invalid_argument("multiplier " + std::to_string(q) + " does not have order " +
                                std::to_string(orbit));
  }
  return ShiftConnection(ctx, ShiftKind::kMultiplicative, coords, std::move(B), q, orbit);
}

RatMatrix ShiftConnection::shifted(std::size_t i, std::size_t j, std::uint32_t k) const {
  const int v = coords_.at(j);
  MultiPoly x = ctx_->poly_var(v);
  MultiPoly image = kind_ == ShiftKind::kAdditive
                        ? x + ctx_->constant(k)
                        : x.scale(ctx_->field().pow(q_, k));
  const RatMatrix& b = B_.at(i);
  return b.map(b.ring(), [&](const RatFunc& f) { return f.substitute(v, image); });
}

namespace {

RatMatrix orbit(const ShiftConnection& conn, std::size_t i) {
  RatMatrix acc = RatMatrix::identity(conn.B(i).ring(), conn.dim());
  // Right-to-left: factor j = 0 is applied first.
  for (std::uint32_t j = 0; j < conn.orbit(); ++j) acc = normalize(conn.shifted(i, i, j) * acc);
  return acc;
}

}  // namespace

RatMatrix p_curvature_additive(const ShiftConnection& conn, std::size_t i) {
  if (conn.kind() != ShiftKind::kAdditive) throw std::invalid_argument("connection is not additive");
  return orbit(conn, i);
}

RatMatrix p_curvature_multiplicative(const ShiftConnection& conn, std::size_t i) {
  if (conn.kind() != ShiftKind::kMultiplicative) {
    throw std::invalid_argument("connection is not multiplicative");
  }
  return orbit(conn, i);
}

RatMatrix shift_p_curvature(const ShiftConnection& conn, std::size_t i) { return orbit(conn, i); }

bool shift_flatness_check(const ShiftConnection& conn) {
  for (std::size_t i = 0; i < conn.rank(); ++i) {
    for (std::size_t j = i + 1; j < conn.rank(); ++j) {
      if (conn.shifted(i, j, 1) * conn.B(j) != conn.shifted(j, i, 1) * conn.B(i)) return false;
    }
  }
  return true;
}

RatMatrix orbit_product(const std::vector<RatMatrix>& A, const MultiPoly& q, const RatMatrix* t) {
  if (A.empty()) throw std::invalid_argument("orbit_product: empty factor list");
  const RatRing& ring = A.front().ring();
  const std::size_t n = A.front().size();
  const RatMatrix one = RatMatrix::identity(ring, n);
  RatFunc qm1(q - ring.C->constant(1));
  RatMatrix acc = one;
  for (const auto& a : A) {
    RatMatrix factor = one + a.scale(qm1);
    if (t) factor = factor * *t;
    acc = normalize(factor * acc);
  }
  return acc;
}

RatMatrix orbit_product_target(const std::vector<RatMatrix>& A, const MultiPoly& q,
                               const RatMatrix* t) {
  if (A.empty()) throw std::invalid_argument("orbit_product_target: empty factor list");
  const RatRing& ring = A.front().ring();
  const Context& ctx = *ring.C;
  const std::size_t n = A.front().size();
  const std::uint32_t p = static_cast<std::uint32_t>(A.size());
  if (p % ctx.p() == 0) throw std::invalid_argument("orbit length divisible by the characteristic");
  RatMatrix sum(ring, n);
  for (const auto& a : A) sum = sum + a;
  RatFunc coeff((q.pow(p) - ctx.constant(1)).scale(ctx.field().inv(p % ctx.p())));
  RatMatrix out = RatMatrix::identity(ring, n) + sum.scale(coeff);
  if (t) out = out * t->map(ring, [&](const RatFunc& f) { return f.pow(p); });
  return normalize(out);
}

}  // namespace pcurv
