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

#ifndef TAUFORGE_POLYNOMIAL_HPP
#define TAUFORGE_POLYNOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tauforge {

using Exponent = std::vector<std::uint32_t>;

/// Multivariate polynomial with integer coefficients, stored as a map from
/// exponent vector to nonzero coefficient. The zero polynomial has no terms,
/// so structural equality is polynomial equality.
class SparsePoly {
 public:
  using TermMap = std::map<Exponent, mpz_class>;

  explicit SparsePoly(std::size_t arity = 0) : arity_(arity) {}

  static SparsePoly constant(std::size_t arity, const mpz_class &c);
  /// x_{var+1}, i.e. `var` is 0-based.
  static SparsePoly variable(std::size_t arity, std::size_t var);
  static SparsePoly monomial(Exponent exp, const mpz_class &c);
  /// Sums duplicate exponents and drops zeros.
  static SparsePoly from_terms(std::size_t arity,
                               std::span<const std::pair<Exponent, mpz_class>> terms);

  std::size_t arity() const noexcept { return arity_; }
  const TermMap &terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  mpz_class coefficient(const Exponent &exp) const;
  std::uint32_t total_degree() const;

  /// Adds c * x^exp in place.
  void add_term(const Exponent &exp, const mpz_class &c);

  SparsePoly &operator+=(const SparsePoly &rhs);
  SparsePoly &operator-=(const SparsePoly &rhs);
  SparsePoly operator-() const;

  friend SparsePoly operator+(SparsePoly a, const SparsePoly &b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly &b) { return a -= b; }
  friend SparsePoly operator*(const SparsePoly &a, const SparsePoly &b);

  friend bool operator==(const SparsePoly &, const SparsePoly &) = default;

  mpz_class evaluate(std::span<const mpz_class> point) const;
  mpq_class evaluate(std::span<const mpq_class> point) const;
  std::uint64_t evaluate_mod(std::span<const std::uint64_t> point,
                             std::uint64_t prime) const;

  /// Moves variable i to variable `mapping[i]` of a polynomial of arity
  /// `new_arity`.
  SparsePoly rename(std::size_t new_arity,
                    std::span<const std::size_t> mapping) const;

  /// Dense coefficient list, lowest degree first. Arity must be 1.
  std::vector<mpz_class> univariate_coefficients() const;
  static SparsePoly from_univariate(std::span<const mpz_class> coeffs);

  /// Human-readable rendering like "x^2 - 3*x + 2" (x1, x2, ... when the
  /// arity exceeds 1).
  std::string to_string() const;

 private:
  std::size_t arity_;
  TermMap terms_;
};

// Operation-style entry points; all throw ArityMismatch on unequal arity.
SparsePoly poly_add(const SparsePoly &a, const SparsePoly &b);
SparsePoly poly_sub(const SparsePoly &a, const SparsePoly &b);
SparsePoly poly_mul(const SparsePoly &a, const SparsePoly &b);
bool poly_equal(const SparsePoly &a, const SparsePoly &b);

/// (x - 1)(x - 2)...(x - d), expanded.
SparsePoly pd(unsigned d);

struct UnivariateDivision {
  SparsePoly quotient;
  SparsePoly remainder;
};

/// Exact division of univariate polynomials by a monic divisor.
UnivariateDivision divide_monic(const SparsePoly &dividend,
                                const SparsePoly &divisor);

/// The distinct integer zeros of a nonzero univariate polynomial, ascending.
/// Candidates are the divisors of the trailing nonzero coefficient, found by
/// trial division up to `factor_budget` with a Pollard-rho fallback.
/// Throws ZeroPolynomial or FactorizationTooHard.
std::vector<mpz_class> integer_roots(const SparsePoly &f,
                                     std::uint64_t factor_budget);

/// 1 + max |a_i / a_lead|: every complex root has modulus below this.
mpz_class cauchy_root_bound(const SparsePoly &f);

}  // namespace tauforge

#endif  // TAUFORGE_POLYNOMIAL_HPP
