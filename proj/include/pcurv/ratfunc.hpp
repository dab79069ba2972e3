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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcurv/multipoly.hpp"

namespace pcurv {

// Raised when an evaluation point lies on a denominator hyperplane.
class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// numerator / prod(form^exp). Forms are distinct linear polynomials, monic
// in their grlex-leading variable, sorted by MultiPoly::compare. The scalar
// part of the denominator is folded into the numerator.
class RatFunc {
 public:
  struct Factor {
    MultiPoly form;
    std::uint32_t exp;
  };

  RatFunc() = default;
  explicit RatFunc(const Context& ctx) : num_(ctx) {}
  RatFunc(const MultiPoly& num);  // NOLINT(google-explicit-constructor)
  // num / prod(form^exp); forms may be unnormalized nonconstant linear polys.
  RatFunc(const MultiPoly& num, const std::vector<Factor>& den);

  static RatFunc constant(const Context& ctx, Fp c);
  // 1 / form^k for a nonconstant linear form.
  static RatFunc inv_linear(const MultiPoly& form, std::uint32_t k = 1);

  const Context* ctx() const { return num_.ctx(); }
  const MultiPoly& num() const { return num_; }
  const std::vector<Factor>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  // Product of the denominator factors, expanded.
  MultiPoly den_poly() const;
  // Throws if a denominator remains after normalize().
  MultiPoly to_poly() const;

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  bool operator==(const RatFunc& o) const { return (*this - o).is_zero(); }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc scale(Fp c) const;
  RatFunc pow(std::uint32_t k) const;

  // Result denominators use the same factor set with exponents raised by one.
  RatFunc derivative(int v) const;
  // Cancels each factor while it divides the numerator exactly.
  RatFunc normalize() const;
  // Coefficientwise p-th power with variables to their p-th powers; a linear
  // form over F_p twists to its own p-th power, so factors keep their forms.
  RatFunc frobenius_twist() const;

  // Partial evaluation; throws PoleError when a factor vanishes identically
  // after the substitution.
  RatFunc evaluate(const std::vector<std::pair<int, Fp>>& values) const;
  // Evaluation that must eliminate every denominator.
  MultiPoly evaluate_poly(const std::vector<std::pair<int, Fp>>& values) const;
  // Replaces v by `image`; factor images must stay of degree at most one.
  RatFunc substitute(int v, const MultiPoly& image) const;

  bool depends_on(int v) const;
  // Numerator split over monomials in `vars`; requires den free of `vars`.
  std::vector<std::pair<Monomial, RatFunc>> split(const std::vector<int>& vars) const;

  std::string to_string(bool with_modulus = false) const;

 private:
  MultiPoly num_;
  std::vector<Factor> den_;

  // Adds factor^exp to the denominator, merging equal forms.
  void push_factor(const MultiPoly& form, std::uint32_t exp);
};

// Exact division by a linear form monic in variable v; empty when inexact.
bool divide_by_linear(const MultiPoly& f, const MultiPoly& form, int v, MultiPoly* quotient);

// Grlex-leading variable of a nonconstant linear form.
int leading_variable(const MultiPoly& form);

}  // namespace pcurv
