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

#include "pcurv/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace pcurv {

namespace {

// Reduces `a` to row echelon form in place, mirroring every row operation on
// `b` when given. Returns the pivot columns.
std::vector<std::size_t> eliminate(FpMatrix& a, FpMatrix* b) {
  const PrimeField& F = *a.ring().F;
  const std::size_t n = a.size();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(row, j));
        if (b) std::swap((*b)(piv, j), (*b)(row, j));
      }
    }
    const Fp inv = F.inv(a(row, col));
    for (std::size_t j = 0; j < n; ++j) {
      a(row, j) = F.mul(a(row, j), inv);
      if (b) (*b)(row, j) = F.mul((*b)(row, j), inv);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Fp f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = F.sub(a(i, j), F.mul(f, a(row, j)));
        if (b) (*b)(i, j) = F.sub((*b)(i, j), F.mul(f, (*b)(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const FpMatrix& m) {
  FpMatrix a = m;
  return eliminate(a, nullptr).size();
}

FpMatrix inverse(const FpMatrix& m) {
  FpMatrix a = m;
  FpMatrix b = FpMatrix::identity(m.ring(), m.size());
  if (eliminate(a, &b).size() != m.size()) throw std::domain_error("inverse: singular matrix");
  return b;
}

}  // namespace pcurv
