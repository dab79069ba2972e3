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

#include "pcurv/ratfunc.hpp"

#include <algorithm>
#include <sstream>

namespace pcurv {

int leading_variable(const MultiPoly& form) {
  if (form.is_zero() || form.total_degree() != 1) {
    throw std::invalid_argument("not a nonconstant linear form: " + form.to_string());
  }
  const Monomial& m = form.terms()[0].m;
  for (std::size_t v = 0; v < kMaxVars; ++v) {
    if (m.e[v]) return static_cast<int>(v);
  }
  throw std::logic_error("linear form without variable");
}

bool divide_by_linear(const MultiPoly& f, const MultiPoly& form, int v, MultiPoly* quotient) {
  const Context& ctx = *form.ctx();
  if (f.is_zero()) {
    *quotient = MultiPoly(ctx);
    return true;
  }
  std::uint32_t n = f.degree_in(v);
  if (n == 0) return false;
  // form = v + r with r free of v.
  MultiPoly r = form - MultiPoly::variable(ctx, v);
  std::vector<std::vector<MultiPoly::Term>> groups(n + 1);
  for (const auto& t : f.terms()) {
    MultiPoly::Term s = t;
    std::uint16_t k = s.m.e[v];
    s.m.e[v] = 0;
    s.m.deg -= k;
    groups[k].push_back(s);
  }
  std::vector<MultiPoly> a(n + 1);
  for (std::uint32_t k = 0; k <= n; ++k) a[k] = MultiPoly::from_terms(ctx, std::move(groups[k]));
  // Synthetic division at the root v = -r.
  std::vector<MultiPoly> b(n);
  b[n - 1] = a[n];
  for (std::uint32_t k = n - 1; k >= 1; --k) b[k - 1] = a[k] - r * b[k];
  MultiPoly rem = a[0] - r * b[0];
  if (!rem.is_zero()) return false;
  MultiPoly q(ctx);
  for (std::uint32_t k = 0; k < n; ++k) {
    if (!b[k].is_zero()) q += b[k].mul_monomial(Monomial::var(v, static_cast<std::uint16_t>(k)), 1);
  }
  *quotient = q;
  return true;
}

namespace {

// Monic form and the scalar c with form = c * monic.
std::pair<MultiPoly, Fp> monic(const MultiPoly& form) {
  Fp c = form.leading_coefficient();
  const PrimeField& F = form.ctx()->field();
  return {form.scale(F.inv(c)), c};
}

}  // namespace

RatFunc::RatFunc(const MultiPoly& num) : num_(num) {}

RatFunc::RatFunc(const MultiPoly& num, const std::vector<Factor>& den) : num_(num) {
  for (const auto& f : den) {
    if (f.exp == 0) continue;
    if (f.form.is_constant()) {
      Fp c = f.form.constant_value();
      const PrimeField& F = f.form.ctx()->field();
      if (c == 0) throw PoleError("zero denominator factor");
      num_ = num_.scale(F.pow(F.inv(c), f.exp));
      continue;
    }
    auto [m, c] = monic(f.form);
    const PrimeField& F = f.form.ctx()->field();
    num_ = num_.scale(F.pow(F.inv(c), f.exp));
    push_factor(m, f.exp);
  }
  if (num_.is_zero()) den_.clear();
}

RatFunc RatFunc::constant(const Context& ctx, Fp c) {
  return RatFunc(MultiPoly::constant(ctx, c));
}

RatFunc RatFunc::inv_linear(const MultiPoly& form, std::uint32_t k) {
  const Context& ctx = *form.ctx();
  return RatFunc(MultiPoly::constant(ctx, 1), {{form, k}});
}

void RatFunc::push_factor(const MultiPoly& form, std::uint32_t exp) {
  auto it = std::lower_bound(den_.begin(), den_.end(), form,
                             [](const Factor& f, const MultiPoly& g) {
                               return MultiPoly::compare(f.form, g) < 0;
                             });
  if (it != den_.end() && MultiPoly::compare(it->form, form) == 0) {
    it->exp += exp;
  } else {
    den_.insert(it, Factor{form, exp});
  }
}

MultiPoly RatFunc::den_poly() const {
  MultiPoly d = MultiPoly::constant(*ctx(), 1);
  for (const auto& f : den_) d *= f.form.pow(f.exp);
  return d;
}

MultiPoly RatFunc::to_poly() const {
  if (den_.empty()) return num_;
  RatFunc n = normalize();
  if (!n.den_.empty()) throw std::logic_error("rational function is not a polynomial: " + to_string());
  return n.num_;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (den_.empty() && o.den_.empty()) return RatFunc(num_ + o.num_);
  // Common denominator with the maximal exponent per form.
  RatFunc r;
  MultiPoly a = num_, b = o.num_;
  std::size_t i = 0, j = 0;
  while (i < den_.size() || j < o.den_.size()) {
    int c;
    if (i == den_.size()) {
      c = 1;
    } else if (j == o.den_.size()) {
      c = -1;
    } else {
      c = MultiPoly::compare(den_[i].form, o.den_[j].form);
    }
    if (c < 0) {
      b *= den_[i].form.pow(den_[i].exp);
      r.den_.push_back(den_[i]);
      ++i;
    } else if (c > 0) {
      a *= o.den_[j].form.pow(o.den_[j].exp);
      r.den_.push_back(o.den_[j]);
      ++j;
    } else {
      std::uint32_t ea = den_[i].exp, eb = o.den_[j].exp;
      if (ea < eb) a *= den_[i].form.pow(eb - ea);
      if (eb < ea) b *= den_[i].form.pow(ea - eb);
      r.den_.push_back({den_[i].form, std::max(ea, eb)});
      ++i;
      ++j;
    }
  }
  r.num_ = a + b;
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  RatFunc r;
  r.num_ = num_ * o.num_;
  if (r.num_.is_zero()) return r;
  r.den_ = den_;
  for (const auto& f : o.den_) r.push_factor(f.form, f.exp);
  return r;
}

RatFunc RatFunc::scale(Fp c) const {
  RatFunc r = *this;
  r.num_ = num_.scale(c);
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

RatFunc RatFunc::pow(std::uint32_t k) const {
  RatFunc r;
  r.num_ = num_.pow(k);
  if (r.num_.is_zero()) return r;
  for (const auto& f : den_) r.den_.push_back({f.form, f.exp * k});
  return r;
}

RatFunc RatFunc::derivative(int v) const {
  if (is_zero()) return *this;
  const Context& c = *ctx();
  const PrimeField& F = c.field();
  std::vector<std::size_t> K;
  for (std::size_t k = 0; k < den_.size(); ++k) {
    if (den_[k].form.depends_on(v)) K.push_back(k);
  }
  if (K.empty()) {
    RatFunc r = *this;
    r.num_ = num_.derivative(v);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
  }
  // d(N / prod l^e) = (N' prod_K l - N sum_k e_k l_k' prod_{K\k} l) / (D prod_K l)
  MultiPoly prod_all = MultiPoly::constant(c, 1);
  for (std::size_t k : K) prod_all *= den_[k].form;
  MultiPoly num = num_.derivative(v) * prod_all;
  for (std::size_t k : K) {
    Fp lk = den_[k].form.derivative(v).constant_value();
    Fp coeff = F.mul(lk, den_[k].exp % F.modulus());
    if (coeff == 0) continue;
    MultiPoly others = MultiPoly::constant(c, 1);
    for (std::size_t j : K) {
      if (j != k) others *= den_[j].form;
    }
    num -= (num_ * others).scale(coeff);
  }
  RatFunc r;
  r.num_ = num;
  if (num.is_zero()) return r;
  r.den_ = den_;
  for (std::size_t k : K) r.den_[k].exp += 1;
  return r;
}

RatFunc RatFunc::normalize() const {
  if (den_.empty()) return *this;
  RatFunc r;
  r.num_ = num_;
  if (r.num_.is_zero()) return r;
  for (const auto& f : den_) {
    int v = leading_variable(f.form);
    std::uint32_t e = f.exp;
    MultiPoly q;
    while (e > 0 && divide_by_linear(r.num_, f.form, v, &q)) {
      r.num_ = q;
      --e;
    }
    if (e) r.den_.push_back({f.form, e});
  }
  return r;
}

RatFunc RatFunc::frobenius_twist() const {
  RatFunc r;
  r.num_ = num_.frobenius_twist();
  if (r.num_.is_zero()) return r;
  std::uint32_t p = ctx()->p();
  r.den_ = den_;
  for (auto& f : r.den_) f.exp *= p;
  return r;
}

RatFunc RatFunc::evaluate(const std::vector<std::pair<int, Fp>>& values) const {
  if (values.empty()) return *this;
  const PrimeField& F = ctx()->field();
  bool retried = false;
  const RatFunc* src = this;
  RatFunc normalized;
  for (;;) {
    RatFunc r;
    r.num_ = src->num_.evaluate(values);
    bool pole = false;
    std::vector<std::pair<MultiPoly, std::uint32_t>> rest;
    for (const auto& f : src->den_) {
      MultiPoly g = f.form.evaluate(values);
      if (g.is_constant()) {
        Fp c = g.constant_value();
        if (c == 0) {
          pole = true;
          break;
        }
        r.num_ = r.num_.scale(F.pow(F.inv(c), f.exp));
      } else {
        rest.push_back({g, f.exp});
      }
    }
    if (pole) {
      // Factor may cancel against the numerator; retry in lowest terms.
      if (retried) throw PoleError("evaluation point is a pole of " + to_string());
      normalized = normalize();
      src = &normalized;
      retried = true;
      continue;
    }
    for (auto& [g, e] : rest) {
      auto [m, c] = monic(g);
      r.num_ = r.num_.scale(F.pow(F.inv(c), e));
      r.push_factor(m, e);
    }
    if (r.num_.is_zero()) r.den_.clear();
    return r;
  }
}

MultiPoly RatFunc::evaluate_poly(const std::vector<std::pair<int, Fp>>& values) const {
  RatFunc r = evaluate(values);
  if (!r.den_.empty()) r = r.normalize();
  if (!r.den_.empty()) {
    throw std::invalid_argument("evaluation leaves a denominator: " + r.to_string());
  }
  return r.num_;
}

RatFunc RatFunc::substitute(int v, const MultiPoly& image) const {
  RatFunc r;
  r.num_ = num_.substitute(v, image);
  if (r.num_.is_zero()) return r;
  const PrimeField& F = ctx()->field();
  for (const auto& f : den_) {
    MultiPoly g = f.form.substitute(v, image);
    if (g.total_degree() > 1) {
      throw std::invalid_argument("substitution makes a denominator nonlinear");
    }
    if (g.is_constant()) {
      Fp c = g.constant_value();
      if (c == 0) throw PoleError("substitution lands on a pole");
      r.num_ = r.num_.scale(F.pow(F.inv(c), f.exp));
    } else {
      auto [m, c] = monic(g);
      r.num_ = r.num_.scale(F.pow(F.inv(c), f.exp));
      r.push_factor(m, f.exp);
    }
  }
  return r;
}

bool RatFunc::depends_on(int v) const {
  if (num_.depends_on(v)) return true;
  for (const auto& f : den_) {
    if (f.form.depends_on(v)) return true;
  }
  return false;
}

std::vector<std::pair<Monomial, RatFunc>> RatFunc::split(const std::vector<int>& vars) const {
  for (const auto& f : den_) {
    for (int v : vars) {
      if (f.form.depends_on(v)) throw std::invalid_argument("split variable in denominator");
    }
  }
  std::vector<std::pair<Monomial, RatFunc>> out;
  if (is_zero()) return out;
  for (auto& [m, c] : num_.split(vars)) {
    RatFunc r;
    r.num_ = c;
    r.den_ = den_;
    out.push_back({m, r});
  }
  return out;
}

std::string RatFunc::to_string(bool with_modulus) const {
  std::ostringstream os;
  if (den_.empty()) {
    os << num_.to_string(false);
  } else {
    os << "(" << num_.to_string(false) << ")/(";
    bool first = true;
    for (const auto& f : den_) {
      if (!first) os << "*";
      first = false;
      os << "(" << f.form.to_string(false) << ")";
      if (f.exp > 1) os << "^" << f.exp;
    }
    os << ")";
  }
  if (with_modulus && ctx()) os << " (mod " << ctx()->p() << ")";
  return os.str();
}

}  // namespace pcurv
