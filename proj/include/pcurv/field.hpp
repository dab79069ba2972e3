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
#include <stdexcept>
#include <string>

namespace pcurv {

// Residue in [0, modulus). The modulus lives in a shared PrimeField.
using Fp = std::uint32_t;

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  // Requires a prime modulus below 2^31.
  explicit PrimeField(std::uint32_t modulus);

  std::uint32_t modulus() const { return p_; }

  Fp reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Fp>(r < 0 ? r + p_ : r);
  }
  Fp add(Fp a, Fp b) const {
    Fp s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + (p_ - b); }
  Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
  Fp mul(Fp a, Fp b) const {
    return static_cast<Fp>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Fp pow(Fp a, std::uint64_t e) const;
  // Throws std::domain_error for a == 0.
  Fp inv(Fp a) const;
  Fp div(Fp a, Fp b) const { return mul(a, inv(b)); }

  // Representative in (-p/2, p/2], used only for human-facing output.
  std::int64_t balanced(Fp a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

 private:
  std::uint32_t p_;
};

// Element of exact multiplicative order `order` in F_ell.
// Throws std::invalid_argument when order does not divide ell - 1.
Fp find_order_p_element(const PrimeField& field, std::uint32_t order);

// Multiplicative order of a nonzero element.
std::uint64_t multiplicative_order(const PrimeField& field, Fp a);

}  // namespace pcurv
