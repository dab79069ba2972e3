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

#include "pcurv/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pcurv {

Monomial Monomial::var(int v, std::uint16_t k) {
  if (v < 0 || static_cast<std::size_t>(v) >= kMaxVars) {
    throw std::out_of_range("variable index out of range");
  }
  Monomial m;
  m.e[v] = k;
  m.deg = k;
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    std::uint32_t s = static_cast<std::uint32_t>(e[i]) + o.e[i];
    if (s > 0xFFFF) throw std::overflow_error("exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.deg = deg + o.deg;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (e[i] > o.e[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------- Context

Context::Context(std::uint32_t p, const std::vector<std::string>& names)
    : field_(p) {
  for (const auto& n : names) var(n);
}

int Context::var(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  if (names_.size() >= kMaxVars) {
    throw std::length_error("variable registry full (" +
                            std::to_string(kMaxVars) + ")");
  }
  int v = static_cast<int>(names_.size());
  names_.push_back(name);
  index_.emplace(name, v);
  return v;
}

int Context::find(const std::string& name) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

std::string Context::name(int v) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (v < 0 || static_cast<std::size_t>(v) >= names_.size()) {
    return "v" + std::to_string(v);
  }
  return names_[v];
}

int Context::nvars() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<int>(names_.size());
}

MultiPoly Context::poly_var(const std::string& name) const {
  return MultiPoly::variable(*this, var(name));
}
MultiPoly Context::poly_var(int v) const { return MultiPoly::variable(*this, v); }
MultiPoly Context::constant(std::int64_t c) const {
  return MultiPoly::from_int(*this, c);
}
MultiPoly Context::zero() const { return MultiPoly(*this); }

// ---------------------------------------------------------------- MultiPoly

namespace {

bool term_greater(const MultiPoly::Term& a, const MultiPoly::Term& b) {
  return grlex_compare(a.m, b.m) > 0;
}

}  // namespace

MultiPoly MultiPoly::constant(const Context& ctx, Fp c) {
  MultiPoly r(ctx);
  c %= ctx.p();
  if (c) r.terms_.push_back({Monomial{}, c});
  return r;
}

MultiPoly MultiPoly::from_int(const Context& ctx, std::int64_t c) {
  return constant(ctx, ctx.field().reduce(c));
}

MultiPoly MultiPoly::variable(const Context& ctx, int v, std::uint16_t k) {
  MultiPoly r(ctx);
  r.terms_.push_back({Monomial::var(v, k), 1});
  return r;
}

MultiPoly MultiPoly::monomial(const Context& ctx, const Monomial& m, Fp c) {
  MultiPoly r(ctx);
  c %= ctx.p();
  if (c) r.terms_.push_back({m, c});
  return r;
}

MultiPoly MultiPoly::from_terms(const Context& ctx, std::vector<Term> terms) {
  const PrimeField& F = ctx.field();
  std::sort(terms.begin(), terms.end(), term_greater);
  MultiPoly r(ctx);
  r.terms_.reserve(terms.size());
  for (auto& t : terms) {
    t.c %= F.modulus();
    if (!r.terms_.empty() && r.terms_.back().m == t.m) {
      r.terms_.back().c = F.add(r.terms_.back().c, t.c);
      if (r.terms_.back().c == 0) r.terms_.pop_back();
    } else if (t.c) {
      r.terms_.push_back(t);
    }
  }
  return r;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0);
}

Fp MultiPoly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].c;
}

Fp MultiPoly::leading_coefficient() const {
  return terms_.empty() ? 0 : terms_[0].c;
}

std::uint32_t MultiPoly::total_degree() const {
  return terms_.empty() ? 0 : terms_[0].m.deg;
}

std::uint32_t MultiPoly::degree_in(int v) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.m.e[v]);
  return d;
}

std::uint32_t MultiPoly::min_degree_in(int v) const {
  if (terms_.empty()) return 0;
  std::uint32_t d = 0xFFFFFFFFu;
  for (const auto& t : terms_) d = std::min<std::uint32_t>(d, t.m.e[v]);
  return d;
}

bool MultiPoly::depends_on(int v) const {
  for (const auto& t : terms_) {
    if (t.m.e[v]) return true;
  }
  return false;
}

std::vector<int> MultiPoly::support() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < kMaxVars; ++v) {
    if (depends_on(static_cast<int>(v))) out.push_back(static_cast<int>(v));
  }
  return out;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  const Context* ctx = pick(o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  const PrimeField& F = ctx->field();
  MultiPoly r(*ctx);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = grlex_compare(terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Fp s = F.add(terms_[i].c, o.terms_[j].c);
      if (s) r.terms_.push_back({terms_[i].m, s});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  if (!ctx_) return r;
  const PrimeField& F = ctx_->field();
  for (auto& t : r.terms_) t.c = F.neg(t.c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::mul_monomial(const Monomial& m, Fp c) const {
  if (terms_.empty() || c == 0) return ctx_ ? MultiPoly(*ctx_) : MultiPoly();
  const PrimeField& F = ctx_->field();
  MultiPoly r(*ctx_);
  r.terms_.reserve(terms_.size());
  // grlex is a monomial order, so the product stays sorted.
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, F.mul(t.c, c)});
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  const Context* ctx = pick(o);
  if (terms_.empty() || o.terms_.empty()) return ctx ? MultiPoly(*ctx) : MultiPoly();
  if (terms_.size() == 1) return o.mul_monomial(terms_[0].m, terms_[0].c);
  if (o.terms_.size() == 1) return mul_monomial(o.terms_[0].m, o.terms_[0].c);
  const PrimeField& F = ctx->field();
  std::vector<Term> prods;
  prods.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) prods.push_back({a.m * b.m, F.mul(a.c, b.c)});
  }
  std::sort(prods.begin(), prods.end(), term_greater);
  MultiPoly r(*ctx);
  r.terms_.reserve(prods.size());
  for (const auto& t : prods) {
    if (!r.terms_.empty() && r.terms_.back().m == t.m) {
      r.terms_.back().c = F.add(r.terms_.back().c, t.c);
    } else {
      if (!r.terms_.empty() && r.terms_.back().c == 0) r.terms_.pop_back();
      r.terms_.push_back(t);
    }
  }
  if (!r.terms_.empty() && r.terms_.back().c == 0) r.terms_.pop_back();
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].c != o.terms_[i].c || !(terms_[i].m == o.terms_[i].m)) {
      return false;
    }
  }
  return true;
}

MultiPoly MultiPoly::scale(Fp c) const {
  if (!ctx_) return *this;
  return mul_monomial(Monomial{}, c % ctx_->p());
}

MultiPoly MultiPoly::pow(std::uint32_t k) const {
  if (!ctx_) throw std::logic_error("pow of unbound polynomial");
  MultiPoly r = constant(*ctx_, 1);
  MultiPoly b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

MultiPoly MultiPoly::derivative(int v) const {
  if (!ctx_) return *this;
  const PrimeField& F = ctx_->field();
  MultiPoly r(*ctx_);
  r.terms_.reserve(terms_.size());
  // Dividing the surviving monomials by v preserves grlex order.
  for (const auto& t : terms_) {
    std::uint16_t k = t.m.e[v];
    if (k == 0) continue;
    Fp c = F.mul(t.c, k % F.modulus());
    if (c == 0) continue;
    Term n = t;
    n.m.e[v] = k - 1;
    n.m.deg -= 1;
    n.c = c;
    r.terms_.push_back(n);
  }
  return r;
}

MultiPoly MultiPoly::power_substitute(std::uint32_t e) const {
  if (!ctx_) return *this;
  MultiPoly r(*ctx_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term n = t;
    for (auto& x : n.m.e) {
      std::uint32_t s = static_cast<std::uint32_t>(x) * e;
      if (s > 0xFFFF) throw std::overflow_error("exponent overflow");
      x = static_cast<std::uint16_t>(s);
    }
    n.m.deg = t.m.deg * e;
    r.terms_.push_back(n);
  }
  // Uniform scaling preserves grlex order.
  return r;
}

MultiPoly MultiPoly::power_substitute(std::uint32_t e, const std::vector<int>& vars) const {
  if (!ctx_) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term n = t;
    for (int v : vars) {
      std::uint32_t s = static_cast<std::uint32_t>(n.m.e[v]) * e;
      if (s > 0xFFFF) throw std::overflow_error("exponent overflow");
      n.m.deg += s - n.m.e[v];
      n.m.e[v] = static_cast<std::uint16_t>(s);
    }
    out.push_back(n);
  }
  return from_terms(*ctx_, std::move(out));
}

MultiPoly MultiPoly::frobenius_twist() const {
  if (!ctx_) return *this;
  // Coefficients lie in the prime field, where c^p = c.
  return power_substitute(ctx_->p());
}

MultiPoly MultiPoly::evaluate(const std::vector<std::pair<int, Fp>>& values) const {
  if (!ctx_ || values.empty()) return *this;
  const PrimeField& F = ctx_->field();
  // Power tables per assigned variable, filled lazily.
  std::vector<std::pair<int, std::vector<Fp>>> tables;
  tables.reserve(values.size());
  for (const auto& [v, a] : values) tables.push_back({v, {1, a % F.modulus()}});
  auto power = [&](std::vector<Fp>& tab, std::uint32_t k) {
    while (tab.size() <= k) tab.push_back(F.mul(tab.back(), tab[1]));
    return tab[k];
  };
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term n = t;
    for (auto& [v, tab] : tables) {
      std::uint16_t k = n.m.e[v];
      if (k == 0) continue;
      n.c = F.mul(n.c, power(tab, k));
      n.m.e[v] = 0;
      n.m.deg -= k;
    }
    if (n.c) out.push_back(n);
  }
  return from_terms(*ctx_, std::move(out));
}

Fp MultiPoly::evaluate_all(const std::vector<std::pair<int, Fp>>& values) const {
  MultiPoly r = evaluate(values);
  if (!r.is_constant()) {
    throw std::invalid_argument("evaluate_all: unassigned variable " +
                                ctx_->name(r.support().front()));
  }
  return r.constant_value();
}

MultiPoly MultiPoly::substitute(int v, const MultiPoly& image) const {
  if (!ctx_ || !depends_on(v)) return *this;
  std::uint32_t dmax = degree_in(v);
  std::vector<MultiPoly> pw{constant(*ctx_, 1)};
  for (std::uint32_t k = 1; k <= dmax; ++k) pw.push_back(pw.back() * image);
  // Group terms by their v-exponent to share the image powers.
  std::vector<std::vector<Term>> groups(dmax + 1);
  for (const auto& t : terms_) {
    Term n = t;
    std::uint16_t k = n.m.e[v];
    n.m.e[v] = 0;
    n.m.deg -= k;
    groups[k].push_back(n);
  }
  MultiPoly r(*ctx_);
  for (std::uint32_t k = 0; k <= dmax; ++k) {
    if (groups[k].empty()) continue;
    r += from_terms(*ctx_, std::move(groups[k])) * pw[k];
  }
  return r;
}

std::vector<std::pair<Monomial, MultiPoly>> MultiPoly::split(
    const std::vector<int>& vars) const {
  std::vector<std::pair<Monomial, std::vector<Term>>> buckets;
  for (const auto& t : terms_) {
    Monomial key;
    Term rest = t;
    for (int v : vars) {
      key.e[v] = t.m.e[v];
      key.deg += t.m.e[v];
      rest.m.e[v] = 0;
    }
    rest.m.deg -= key.deg;
    auto it = std::find_if(buckets.begin(), buckets.end(),
                           [&](const auto& b) { return b.first == key; });
    if (it == buckets.end()) {
      buckets.push_back({key, {rest}});
    } else {
      it->second.push_back(rest);
    }
  }
  std::vector<std::pair<Monomial, MultiPoly>> out;
  for (auto& [k, ts] : buckets) out.push_back({k, from_terms(*ctx_, std::move(ts))});
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return grlex_compare(a.first, b.first) > 0;
  });
  return out;
}

std::string monomial_to_string(const Context& ctx, const Monomial& m) {
  std::string s;
  for (std::size_t v = 0; v < kMaxVars; ++v) {
    if (!m.e[v]) continue;
    if (!s.empty()) s += "*";
    s += ctx.name(static_cast<int>(v));
    if (m.e[v] > 1) s += "^" + std::to_string(m.e[v]);
  }
  return s;
}

std::string MultiPoly::to_string(bool with_modulus) const {
  std::ostringstream os;
  if (terms_.empty()) {
    os << "0";
  } else {
    bool first = true;
    for (const auto& t : terms_) {
      if (!first) os << " + ";
      first = false;
      if (t.m.deg == 0) {
        os << t.c;
      } else if (t.c == 1) {
        os << monomial_to_string(*ctx_, t.m);
      } else {
        os << t.c << "*" << monomial_to_string(*ctx_, t.m);
      }
    }
  }
  if (with_modulus && ctx_) os << " (mod " << ctx_->p() << ")";
  return os.str();
}

int MultiPoly::compare(const MultiPoly& a, const MultiPoly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = grlex_compare(a.terms_[i].m, b.terms_[i].m);
    if (c) return c;
    if (a.terms_[i].c != b.terms_[i].c) return a.terms_[i].c < b.terms_[i].c ? -1 : 1;
  }
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size() ? -1 : 1;
  return 0;
}

}  // namespace pcurv
