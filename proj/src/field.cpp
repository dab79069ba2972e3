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

#include "pcurv/field.hpp"

#include <vector>

namespace pcurv {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t modulus) : p_(modulus) {
  if (modulus >= (1u << 31)) {
    throw std::invalid_argument("modulus must be below 2^31");
  }
  if (!is_prime(modulus)) {
    throw std::invalid_argument("modulus " + std::to_string(modulus) +
                                " is not prime");
  }
}

Fp PrimeField::pow(Fp a, std::uint64_t e) const {
  Fp r = 1 % p_;
  Fp b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Fp PrimeField::inv(Fp a) const {
  if (a % p_ == 0) {
    throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
  }
  // Extended Euclid on signed 64-bit values.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return reduce(t);
}

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::uint64_t multiplicative_order(const PrimeField& field, Fp a) {
  if (a == 0) throw std::domain_error("zero has no multiplicative order");
  std::uint64_t ord = field.modulus() - 1;
  for (std::uint64_t r : prime_divisors(ord)) {
    while (ord % r == 0 && field.pow(a, ord / r) == 1) ord /= r;
  }
  return ord;
}

Fp find_order_p_element(const PrimeField& field, std::uint32_t order) {
  const std::uint32_t ell = field.modulus();
  if (order < 2) throw std::invalid_argument("order must be at least 2");
  if ((ell - 1) % order != 0) {
    throw std::invalid_argument("no element of order " +
                                std::to_string(order) + " in F_" +
                                std::to_string(ell) + ": " +
                                std::to_string(order) + " does not divide " +
                                std::to_string(ell - 1));
  }
  // Smallest generator-power candidate of exact order; deterministic.
  for (Fp g = 2; g < ell; ++g) {
    Fp q = field.pow(g, (ell - 1) / order);
    if (q != 1 && multiplicative_order(field, q) == order) return q;
  }
  throw std::logic_error("order search exhausted");  // unreachable for prime ell
}

}  // namespace pcurv
