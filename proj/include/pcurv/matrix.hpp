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

#include <cstddef>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcurv/field.hpp"
#include "pcurv/multipoly.hpp"
#include "pcurv/ratfunc.hpp"

namespace pcurv {

// Coefficient rings. Each exposes Elem, zero/one, add/sub/mul/neg, is_zero,
// eq, from_fp and str.

struct FieldRing {
  const PrimeField* F;
  using Elem = Fp;
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const { return F->add(a, b); }
  Elem sub(Elem a, Elem b) const { return F->sub(a, b); }
  Elem mul(Elem a, Elem b) const { return F->mul(a, b); }
  Elem neg(Elem a) const { return F->neg(a); }
  Elem from_fp(Fp c) const { return c % F->modulus(); }
  bool is_zero(Elem a) const { return a == 0; }
  bool eq(Elem a, Elem b) const { return a == b; }
  std::string str(Elem a) const { return std::to_string(a); }
};

struct PolyRing {
  const Context* C;
  using Elem = MultiPoly;
  Elem zero() const { return MultiPoly(*C); }
  Elem one() const { return MultiPoly::constant(*C, 1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem from_fp(Fp c) const { return MultiPoly::constant(*C, c); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const { return a.to_string(false); }
};

struct RatRing {
  const Context* C;
  using Elem = RatFunc;
  Elem zero() const { return RatFunc(*C); }
  Elem one() const { return RatFunc::constant(*C, 1); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem from_fp(Fp c) const { return RatFunc::constant(*C, c); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }
  std::string str(const Elem& a) const { return a.to_string(false); }
};

// Dense square matrix over a coefficient ring; row-major storage.
template <class R>
class Matrix {
 public:
  using Ring = R;
  using Elem = typename R::Elem;

  Matrix() = default;
  Matrix(R ring, std::size_t n) : ring_(ring), n_(n), a_(n * n, ring.zero()) {}

  static Matrix identity(R ring, std::size_t n) {
    Matrix m(ring, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
  }
  static Matrix from_rows(R ring, const std::vector<std::vector<Elem>>& rows) {
    Matrix m(ring, rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  const R& ring() const { return ring_; }
  std::size_t size() const { return n_; }
  Elem& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Matrix operator+(const Matrix& o) const {
    check_size(o);
    Matrix r(ring_, n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ring_.add(a_[k], o.a_[k]);
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_size(o);
    Matrix r(ring_, n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ring_.sub(a_[k], o.a_[k]);
    return r;
  }
  Matrix operator-() const {
    Matrix r(ring_, n_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ring_.neg(a_[k]);
    return r;
  }
  Matrix operator*(const Matrix& o) const {
    check_size(o);
    Matrix r(ring_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t k = 0; k < n_; ++k) {
        const Elem& aik = (*this)(i, k);
        if (ring_.is_zero(aik)) continue;
        for (std::size_t j = 0; j < n_; ++j) {
          const Elem& bkj = o(k, j);
          if (ring_.is_zero(bkj)) continue;
          r(i, j) = ring_.add(r(i, j), ring_.mul(aik, bkj));
        }
      }
    }
    return r;
  }
  Matrix scale(const Elem& c) const {
    Matrix r(ring_, n_);
    for (std::size_t k = 0; k < a_.size(); ++k) {
      if (!ring_.is_zero(a_[k])) r.a_[k] = ring_.mul(c, a_[k]);
    }
    return r;
  }
  std::vector<Elem> apply(const std::vector<Elem>& v) const {
    if (v.size() != n_) throw std::invalid_argument("vector size mismatch");
    std::vector<Elem> out(n_, ring_.zero());
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const Elem& aij = (*this)(i, j);
        if (ring_.is_zero(aij) || ring_.is_zero(v[j])) continue;
        out[i] = ring_.add(out[i], ring_.mul(aij, v[j]));
      }
    }
    return out;
  }
  Matrix transpose() const {
    Matrix r(ring_, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Matrix pow(std::uint64_t k) const {
    Matrix r = identity(ring_, n_), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }
  bool is_zero() const {
    for (const auto& x : a_) {
      if (!ring_.is_zero(x)) return false;
    }
    return true;
  }
  bool operator==(const Matrix& o) const {
    if (n_ != o.n_) return false;
    for (std::size_t k = 0; k < a_.size(); ++k) {
      if (!ring_.eq(a_[k], o.a_[k])) return false;
    }
    return true;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  template <class R2, class F>
  Matrix<R2> map(R2 ring2, F&& f) const {
    Matrix<R2> r(ring2, n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

  // Principal submatrix on the given index set.
  Matrix sub(const std::vector<std::size_t>& idx) const {
    Matrix r(ring_, idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(idx[i], idx[j]);
    return r;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < n_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < n_; ++j) {
        if (j) os << ", ";
        os << ring_.str((*this)(i, j));
      }
      os << "]\n";
    }
    return os.str();
  }

 private:
  R ring_{};
  std::size_t n_ = 0;
  std::vector<Elem> a_;

  void check_size(const Matrix& o) const {
    if (o.n_ != n_) throw std::invalid_argument("matrix size mismatch");
  }
};

template <class R>
Matrix<R> commutator(const Matrix<R>& a, const Matrix<R>& b) {
  return a * b - b * a;
}

using FpMatrix = Matrix<FieldRing>;
using PolyMatrix = Matrix<PolyRing>;
using RatMatrix = Matrix<RatRing>;

inline PolyMatrix to_poly_matrix(const Context& ctx, const FpMatrix& m) {
  return m.map(PolyRing{&ctx}, [&](Fp c) { return MultiPoly::constant(ctx, c); });
}
inline RatMatrix to_rat_matrix(const Context& ctx, const FpMatrix& m) {
  return m.map(RatRing{&ctx}, [&](Fp c) { return RatFunc::constant(ctx, c); });
}
inline RatMatrix to_rat_matrix(const PolyMatrix& m) {
  const Context& ctx = *m.ring().C;
  return m.map(RatRing{&ctx}, [](const MultiPoly& c) { return RatFunc(c); });
}

// Entrywise partial evaluation of a rational matrix.
inline RatMatrix evaluate(const RatMatrix& m, const std::vector<std::pair<int, Fp>>& values) {
  return m.map(m.ring(), [&](const RatFunc& f) { return f.evaluate(values); });
}
// Evaluation that must clear every denominator.
inline PolyMatrix evaluate_poly(const RatMatrix& m, const std::vector<std::pair<int, Fp>>& values) {
  return m.map(PolyRing{m.ring().C}, [&](const RatFunc& f) { return f.evaluate_poly(values); });
}
inline FpMatrix evaluate_fp(const PolyMatrix& m, const std::vector<std::pair<int, Fp>>& values) {
  const Context& ctx = *m.ring().C;
  return m.map(FieldRing{&ctx.field()}, [&](const MultiPoly& f) { return f.evaluate_all(values); });
}
inline RatMatrix normalize(const RatMatrix& m) {
  return m.map(m.ring(), [](const RatFunc& f) { return f.normalize(); });
}

// Rank over the prime field by Gaussian elimination.
std::size_t rank(const FpMatrix& m);
// Inverse over the prime field; throws std::domain_error when singular.
FpMatrix inverse(const FpMatrix& m);

}  // namespace pcurv
