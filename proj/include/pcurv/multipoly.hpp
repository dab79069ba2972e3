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

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "pcurv/field.hpp"

namespace pcurv {

inline constexpr std::size_t kMaxVars = 16;

// Exponent vector over the registry; slots past the registry size stay zero.
struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  static Monomial var(int v, std::uint16_t k = 1);
  Monomial operator*(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool divides(const Monomial& o) const;
};

// Graded-lex: total degree first, then the lower registry index is heavier.
inline int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  }
  return 0;
}

class MultiPoly;

// A computation session: the modulus and the named variable registry.
// Register every variable before sharing a context across threads.
class Context {
 public:
  explicit Context(std::uint32_t p, const std::vector<std::string>& names = {});
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const PrimeField& field() const { return field_; }
  std::uint32_t p() const { return field_.modulus(); }

  // Index of `name`, registering it when absent. Interning a name does not
  // change any existing polynomial, so this is allowed on a shared context.
  int var(const std::string& name) const;
  // Index of `name` or -1.
  int find(const std::string& name) const;
  std::string name(int v) const;
  int nvars() const;

  MultiPoly poly_var(const std::string& name) const;
  MultiPoly poly_var(int v) const;
  MultiPoly constant(std::int64_t c) const;
  MultiPoly zero() const;

 private:
  PrimeField field_;
  mutable std::mutex mu_;
  mutable std::deque<std::string> names_;
  mutable std::map<std::string, int> index_;
};

// Sparse polynomial over the context field; terms kept in descending grlex
// order with nonzero coefficients. A default-constructed value is an unbound
// zero that adopts the context of the other operand.
class MultiPoly {
 public:
  struct Term {
    Monomial m;
    Fp c;
  };

  MultiPoly() = default;
  explicit MultiPoly(const Context& ctx) : ctx_(&ctx) {}

  static MultiPoly constant(const Context& ctx, Fp c);
  static MultiPoly from_int(const Context& ctx, std::int64_t c);
  static MultiPoly variable(const Context& ctx, int v, std::uint16_t k = 1);
  static MultiPoly monomial(const Context& ctx, const Monomial& m, Fp c);
  // Builds from arbitrary terms: sorts, merges and reduces.
  static MultiPoly from_terms(const Context& ctx, std::vector<Term> terms);

  const Context* ctx() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Value of a constant polynomial; throws if not constant.
  Fp constant_value() const;
  Fp leading_coefficient() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(int v) const;
  // Smallest exponent of v among the terms; 0 for the zero polynomial.
  std::uint32_t min_degree_in(int v) const;
  bool depends_on(int v) const;
  std::vector<int> support() const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly scale(Fp c) const;
  MultiPoly mul_monomial(const Monomial& m, Fp c) const;
  MultiPoly pow(std::uint32_t k) const;

  MultiPoly derivative(int v) const;
  // Coefficients to the p-th power (identity on F_p), exponents times p.
  MultiPoly frobenius_twist() const;
  // Every variable v replaced by v^e, coefficients unchanged.
  MultiPoly power_substitute(std::uint32_t e) const;
  // Same, restricted to the listed variables.
  MultiPoly power_substitute(std::uint32_t e, const std::vector<int>& vars) const;

  // Partial evaluation at the given (variable, value) pairs.
  MultiPoly evaluate(const std::vector<std::pair<int, Fp>>& values) const;
  // Full evaluation; every variable in the support must be assigned.
  Fp evaluate_all(const std::vector<std::pair<int, Fp>>& values) const;
  // Replaces v by `image`.
  MultiPoly substitute(int v, const MultiPoly& image) const;

  // Splits as sum over monomials in `vars` of coefficient polynomials free of
  // those variables.
  std::vector<std::pair<Monomial, MultiPoly>> split(const std::vector<int>& vars) const;

  // Canonical text: descending grlex, e.g. "3*x^2*y + 1 (mod 7)".
  std::string to_string(bool with_modulus = true) const;

  // Total order on polynomials (by term list), for canonical factor sorting.
  static int compare(const MultiPoly& a, const MultiPoly& b);

 private:
  const Context* ctx_ = nullptr;
  std::vector<Term> terms_;

  const Context* pick(const MultiPoly& o) const { return ctx_ ? ctx_ : o.ctx_; }
};

std::string monomial_to_string(const Context& ctx, const Monomial& m);

}  // namespace pcurv
