// Copyright 2026 The Tauforge Authors. All rights reserved.
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

#include "tauforge/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "tauforge/error.hpp"
#include "tauforge/factor.hpp"
#include "tauforge/modular.hpp"

namespace tauforge {
namespace {

void require_same_arity(const SparsePoly &a, const SparsePoly &b) {
  if (a.arity() != b.arity())
    throw Error(Errc::ArityMismatch, "polynomial arities " +
                                         std::to_string(a.arity()) + " and " +
                                         std::to_string(b.arity()));
}

template <class T> T power(const T &base, std::uint32_t e) {
  T result = 1;
  T b = base;
  while (e) {
    if (e & 1)
      result *= b;
    e >>= 1;
    if (e)
      b *= b;
  }
  return result;
}

}  // namespace

SparsePoly SparsePoly::constant(std::size_t arity, const mpz_class &c) {
  SparsePoly p(arity);
  p.add_term(Exponent(arity, 0), c);
  return p;
}

SparsePoly SparsePoly::variable(std::size_t arity, std::size_t var) {
  if (var >= arity)
    throw Error(Errc::ArityMismatch, "variable index out of range");
  Exponent e(arity, 0);
  e[var] = 1;
  SparsePoly p(arity);
  p.add_term(e, 1);
  return p;
}

SparsePoly SparsePoly::monomial(Exponent exp, const mpz_class &c) {
  SparsePoly p(exp.size());
  p.add_term(exp, c);
  return p;
}

SparsePoly SparsePoly::from_terms(
    std::size_t arity, std::span<const std::pair<Exponent, mpz_class>> terms) {
  SparsePoly p(arity);
  for (const auto &[e, c] : terms) {
    if (e.size() != arity)
      throw Error(Errc::ArityMismatch, "exponent vector length");
    p.add_term(e, c);
  }
  return p;
}

mpz_class SparsePoly::coefficient(const Exponent &exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

std::uint32_t SparsePoly::total_degree() const {
  std::uint32_t best = 0;
  for (const auto &[e, c] : terms_) {
    std::uint32_t d = 0;
    for (auto v : e)
      d += v;
    best = std::max(best, d);
  }
  return best;
}

void SparsePoly::add_term(const Exponent &exp, const mpz_class &c) {
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

SparsePoly &SparsePoly::operator+=(const SparsePoly &rhs) {
  require_same_arity(*this, rhs);
  for (const auto &[e, c] : rhs.terms_)
    add_term(e, c);
  return *this;
}

SparsePoly &SparsePoly::operator-=(const SparsePoly &rhs) {
  require_same_arity(*this, rhs);
  for (const auto &[e, c] : rhs.terms_)
    add_term(e, -c);
  return *this;
}

SparsePoly SparsePoly::operator-() const {
  SparsePoly out(*this);
  for (auto &[e, c] : out.terms_)
    c = -c;
  return out;
}

SparsePoly operator*(const SparsePoly &a, const SparsePoly &b) {
  require_same_arity(a, b);
  SparsePoly out(a.arity());
  Exponent e(a.arity());
  mpz_class prod;
  for (const auto &[ea, ca] : a.terms_) {
    for (const auto &[eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

mpz_class SparsePoly::evaluate(std::span<const mpz_class> point) const {
  if (point.size() != arity_)
    throw Error(Errc::ArityMismatch, "evaluation point length");
  mpz_class sum = 0;
  for (const auto &[e, c] : terms_) {
    mpz_class term = c;
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i])
        term *= power(point[i], e[i]);
    sum += term;
  }
  return sum;
}

mpq_class SparsePoly::evaluate(std::span<const mpq_class> point) const {
  if (point.size() != arity_)
    throw Error(Errc::ArityMismatch, "evaluation point length");
  mpq_class sum = 0;
  for (const auto &[e, c] : terms_) {
    mpq_class term = c;
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i])
        term *= power(point[i], e[i]);
    sum += term;
  }
  return sum;
}

std::uint64_t SparsePoly::evaluate_mod(std::span<const std::uint64_t> point,
                                       std::uint64_t prime) const {
  if (point.size() != arity_)
    throw Error(Errc::ArityMismatch, "evaluation point length");
  std::uint64_t sum = 0;
  for (const auto &[e, c] : terms_) {
    std::uint64_t term = reduce_mod(c, prime);
    for (std::size_t i = 0; i < arity_; ++i)
      if (e[i])
        term = mul_mod(term, pow_mod(point[i], e[i], prime), prime);
    sum = add_mod(sum, term, prime);
  }
  return sum;
}

SparsePoly SparsePoly::rename(std::size_t new_arity,
                              std::span<const std::size_t> mapping) const {
  if (mapping.size() != arity_)
    throw Error(Errc::ArityMismatch, "rename mapping length");
  SparsePoly out(new_arity);
  Exponent ne(new_arity);
  for (const auto &[e, c] : terms_) {
    std::fill(ne.begin(), ne.end(), 0);
    for (std::size_t i = 0; i < arity_; ++i) {
      if (mapping[i] >= new_arity)
        throw Error(Errc::ArityMismatch, "rename target out of range");
      ne[mapping[i]] += e[i];
    }
    out.add_term(ne, c);
  }
  return out;
}

std::vector<mpz_class> SparsePoly::univariate_coefficients() const {
  if (arity_ != 1)
    throw Error(Errc::ArityMismatch, "expected a univariate polynomial");
  std::vector<mpz_class> out;
  if (terms_.empty())
    return out;
  out.resize(terms_.rbegin()->first[0] + 1);
  for (const auto &[e, c] : terms_)
    out[e[0]] = c;
  return out;
}

SparsePoly SparsePoly::from_univariate(std::span<const mpz_class> coeffs) {
  SparsePoly p(1);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    p.add_term(Exponent{static_cast<std::uint32_t>(i)}, coeffs[i]);
  return p;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto &[e, c] = *it;
    mpz_class mag = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool has_var = std::any_of(e.begin(), e.end(), [](auto v) { return v > 0; });
    bool wrote = false;
    if (mag != 1 || !has_var) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i])
        continue;
      if (wrote)
        os << "*";
      os << (arity_ == 1 ? std::string("x") : "x" + std::to_string(i + 1));
      if (e[i] > 1)
        os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

SparsePoly poly_add(const SparsePoly &a, const SparsePoly &b) { return a + b; }
SparsePoly poly_sub(const SparsePoly &a, const SparsePoly &b) { return a - b; }
SparsePoly poly_mul(const SparsePoly &a, const SparsePoly &b) { return a * b; }
bool poly_equal(const SparsePoly &a, const SparsePoly &b) { return a == b; }

SparsePoly pd(unsigned d) {
  if (d == 0)
    throw Error(Errc::ParamOutOfRange, "pd needs d >= 1");
  // Multiply out densely; coefficients[i] is the coefficient of x^i.
  std::vector<mpz_class> c{1};
  for (unsigned k = 1; k <= d; ++k) {
    std::vector<mpz_class> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * k;
    }
    c = std::move(next);
  }
  return SparsePoly::from_univariate(c);
}

UnivariateDivision divide_monic(const SparsePoly &dividend,
                                const SparsePoly &divisor) {
  auto a = dividend.univariate_coefficients();
  auto b = divisor.univariate_coefficients();
  if (b.empty() || b.back() != 1)
    throw Error(Errc::BadFormat, "divisor must be monic");
  std::size_t db = b.size() - 1;
  if (a.size() <= db)
    return {SparsePoly(1), dividend};
  std::vector<mpz_class> q(a.size() - db);
  for (std::size_t i = a.size(); i-- > db;) {
    mpz_class lead = a[i];
    q[i - db] = lead;
    if (lead == 0)
      continue;
    for (std::size_t j = 0; j <= db; ++j)
      a[i - db + j] -= lead * b[j];
  }
  a.resize(db);
  return {SparsePoly::from_univariate(q), SparsePoly::from_univariate(a)};
}

mpz_class cauchy_root_bound(const SparsePoly &f) {
  auto c = f.univariate_coefficients();
  if (c.empty())
    throw Error(Errc::ZeroPolynomial, "root bound of 0");
  mpz_class lead = abs(c.back());
  mpz_class best = 0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), mpz_class(abs(c[i])).get_mpz_t(), lead.get_mpz_t());
    best = std::max(best, q);
  }
  return best + 1;
}

std::vector<mpz_class> integer_roots(const SparsePoly &f,
                                     std::uint64_t factor_budget) {
  if (f.arity() != 1)
    throw Error(Errc::ArityMismatch, "integer_roots needs a univariate polynomial");
  if (f.is_zero())
    throw Error(Errc::ZeroPolynomial, "every integer is a root of 0");
  auto c = f.univariate_coefficients();
  std::size_t shift = 0;
  while (c[shift] == 0)
    ++shift;
  std::vector<mpz_class> roots;
  if (shift > 0)
    roots.push_back(0);
  std::span<const mpz_class> reduced(c.data() + shift, c.size() - shift);
  if (reduced.size() > 1) {
    mpz_class bound = cauchy_root_bound(SparsePoly::from_univariate(reduced));
    auto horner = [&](const mpz_class &x) {
      mpz_class acc = 0;
      for (std::size_t i = reduced.size(); i-- > 0;)
        acc = acc * x + reduced[i];
      return acc;
    };
    for (const mpz_class &d : positive_divisors(reduced.front(), factor_budget)) {
      if (d >= bound)
        break;
      if (horner(d) == 0)
        roots.push_back(d);
      mpz_class neg = -d;
      if (horner(neg) == 0)
        roots.push_back(neg);
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace tauforge
