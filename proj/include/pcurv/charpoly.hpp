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

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcurv/matrix.hpp"

namespace pcurv {

// Coefficients c_0..c_N of det(L*I - M); c_N = 1 and
// c_{N-m} = (-1)^m Tr wedge^m M.
template <class R>
using CharPoly = std::vector<typename R::Elem>;

namespace detail {

// Division-free Berkowitz recursion on the leading principal submatrices.
template <class R>
CharPoly<R> berkowitz(const Matrix<R>& M) {
  const R& ring = M.ring();
  const std::size_t n = M.size();
  using E = typename R::Elem;
  std::vector<E> p{ring.one()};  // highest degree first
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t m = k - 1;  // size of the previous block
    std::vector<E> col(k + 1, ring.zero());
    col[0] = ring.one();
    col[1] = ring.neg(M(m, m));
    std::vector<E> v(m, ring.zero());
    for (std::size_t i = 0; i < m; ++i) v[i] = M(i, m);
    for (std::size_t j = 2; j <= k; ++j) {
      if (j > 2) {
        std::vector<E> w(m, ring.zero());
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t l = 0; l < m; ++l) {
            if (ring.is_zero(M(i, l)) || ring.is_zero(v[l])) continue;
            w[i] = ring.add(w[i], ring.mul(M(i, l), v[l]));
          }
        }
        v = std::move(w);
      }
      E dot = ring.zero();
      for (std::size_t l = 0; l < m; ++l) {
        if (ring.is_zero(M(m, l)) || ring.is_zero(v[l])) continue;
        dot = ring.add(dot, ring.mul(M(m, l), v[l]));
      }
      col[j] = ring.neg(dot);
    }
    std::vector<E> q(k + 1, ring.zero());
    for (std::size_t i = 0; i <= k; ++i) {
      for (std::size_t j = 0; j < k && j <= i; ++j) {
        if (ring.is_zero(col[i - j]) || ring.is_zero(p[j])) continue;
        q[i] = ring.add(q[i], ring.mul(col[i - j], p[j]));
      }
    }
    p = std::move(q);
  }
  std::reverse(p.begin(), p.end());
  return p;
}

// Strongly connected components of the off-diagonal support graph.
template <class R>
std::vector<std::vector<std::size_t>> support_components(const Matrix<R>& M) {
  const std::size_t n = M.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> comps;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == v || M.ring().is_zero(M(v, w))) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      std::sort(comp.begin(), comp.end());
      comps.push_back(std::move(comp));
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] < 0) visit(v);
  }
  return comps;
}

template <class R>
CharPoly<R> poly_mul(const R& ring, const CharPoly<R>& a, const CharPoly<R>& b) {
  CharPoly<R> c(a.size() + b.size() - 1, ring.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ring.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (ring.is_zero(b[j])) continue;
      c[i + j] = ring.add(c[i + j], ring.mul(a[i], b[j]));
    }
  }
  return c;
}

}  // namespace detail

// Characteristic polynomial det(L*I - M), division-free. The matrix is first
// split along the strongly connected components of its support graph, which
// puts it in block-triangular form without changing the result.
template <class R>
CharPoly<R> char_poly(const Matrix<R>& M) {
  const R& ring = M.ring();
  if (M.size() == 0) return {ring.one()};
  auto comps = detail::support_components(M);
  if (comps.size() == 1) return detail::berkowitz(M);
  CharPoly<R> acc{ring.one()};
  for (const auto& comp : comps) acc = detail::poly_mul(ring, acc, detail::berkowitz(M.sub(comp)));
  return acc;
}

// Tr wedge^m M = (-1)^m c_{N-m}.
template <class R>
typename R::Elem trace_wedge(const Matrix<R>& M, std::size_t m) {
  if (m > M.size()) throw std::out_of_range("trace_wedge: m exceeds matrix size");
  auto cp = char_poly(M);
  auto c = cp[M.size() - m];
  return (m % 2) ? M.ring().neg(c) : c;
}

template <class R>
bool charpoly_equal(const R& ring, const CharPoly<R>& a, const CharPoly<R>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!ring.eq(a[i], b[i])) return false;
  }
  return true;
}

// True iff char_poly(M) = L^N.
template <class R>
bool is_nilpotent(const Matrix<R>& M) {
  auto cp = char_poly(M);
  for (std::size_t i = 0; i + 1 < cp.size(); ++i) {
    if (!M.ring().is_zero(cp[i])) return false;
  }
  return true;
}

template <class R>
bool isospectral(const Matrix<R>& A, const Matrix<R>& B) {
  if (A.size() != B.size()) throw std::invalid_argument("isospectral: size mismatch");
  return charpoly_equal(A.ring(), char_poly(A), char_poly(B));
}

// Canonical serialization: one string per coefficient c_0..c_N.
template <class R>
std::vector<std::string> serialize_charpoly(const R& ring, const CharPoly<R>& cp) {
  std::vector<std::string> out;
  for (const auto& c : cp) out.push_back(ring.str(c));
  return out;
}

inline FpMatrix matrix_frobenius_twist(const FpMatrix& M) {
  const PrimeField& F = *M.ring().F;
  return M.map(M.ring(), [&](Fp c) { return F.pow(c, F.modulus()); });
}
inline PolyMatrix matrix_frobenius_twist(const PolyMatrix& M) {
  return M.map(M.ring(), [](const MultiPoly& f) { return f.frobenius_twist(); });
}
inline RatMatrix matrix_frobenius_twist(const RatMatrix& M) {
  return M.map(M.ring(), [](const RatFunc& f) { return f.frobenius_twist(); });
}

// ------------------------------------------------------------ pencils

enum class Strategy { kAuto, kSymbolic, kSampled };

std::string strategy_name(Strategy s);
Strategy parse_strategy(const std::string& s);

class NonCommutingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PencilCheck {
  bool isospectral = false;
  Strategy used = Strategy::kSymbolic;
  std::size_t u_samples = 0;
  // log2 of the Schwartz-Zippel false-accept bound; 0 for symbolic runs.
  double log2_failure_bound = 0.0;
  // Witnessing characteristic polynomials when the check fails.
  std::vector<std::string> lhs_charpoly, rhs_charpoly;
};

// Decides whether sum u_i L_i and sum u_i M_i have equal characteristic
// polynomials. Each list must be pairwise commuting; checked eagerly.
// SAMPLED draws u from the prime field with enough samples for a false-accept
// bound below 2^-30; when the field is too small for any such bound the check
// runs symbolically and reports that.
PencilCheck pencil_isospectral(const std::vector<PolyMatrix>& L,
                               const std::vector<PolyMatrix>& M, Strategy strategy,
                               std::mt19937_64& rng);
PencilCheck pencil_isospectral(const std::vector<RatMatrix>& L,
                               const std::vector<RatMatrix>& M, Strategy strategy,
                               std::mt19937_64& rng);

// Number of u-samples for degree bound d over a field of size q, or 0 when
// no count reaches the 2^-30 bound.
std::size_t sampled_rounds(std::size_t d, std::uint64_t q);

}  // namespace pcurv
