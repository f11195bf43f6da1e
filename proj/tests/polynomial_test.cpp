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

#include <random>

#include "doctest.h"
#include "tauforge/error.hpp"
#include "tauforge/factor.hpp"
#include "tauforge/polynomial.hpp"

using namespace tauforge;

namespace {

SparsePoly uni(std::vector<mpz_class> c) { return SparsePoly::from_univariate(c); }
const SparsePoly kX = SparsePoly::variable(1, 0);
SparsePoly k(long c) { return SparsePoly::constant(1, c); }

std::vector<mpz_class> ints(std::initializer_list<long> xs) {
  std::vector<mpz_class> v;
  for (long x : xs)
    v.push_back(x);
  return v;
}

}  // namespace

TEST_CASE("ring operations") {
  CHECK(poly_mul(kX - k(1), kX - k(2)) == uni({2, -3, 1}));
  SparsePoly f = uni({5, 0, -7, 3});
  CHECK(poly_sub(f, f).is_zero());
  CHECK(poly_sub(f, f).terms().empty());
  CHECK(poly_add(uni({-1, 0, 1}), k(1)) == uni({0, 0, 1}));
  SparsePoly two_var = SparsePoly::variable(2, 1);
  CHECK_THROWS_AS(poly_add(kX, two_var), Error);
  try {
    poly_mul(kX, two_var);
  } catch (const Error &e) {
    CHECK(e.code() == Errc::ArityMismatch);
  }
}

TEST_CASE("pd family") {
  CHECK(pd(1) == kX - k(1));
  CHECK(pd(2) == uni({2, -3, 1}));
  SparsePoly p3 = pd(3);
  for (long x = 1; x <= 3; ++x)
    CHECK(p3.evaluate(ints({x})) == 0);
  // Direct product oracle at 4: 3 * 2 * 1.
  mpz_class direct = 1;
  for (long i = 1; i <= 3; ++i)
    direct *= 4 - i;
  CHECK(p3.evaluate(ints({4})) == direct);
  CHECK(direct == 6);
  SparsePoly p20 = pd(20);
  CHECK(p20.total_degree() == 20);
  CHECK(p20.coefficient({20}) == 1);
  mpz_class fact20;
  mpz_fac_ui(fact20.get_mpz_t(), 20);
  CHECK(p20.coefficient({0}) == fact20);
}

TEST_CASE("poly_equal") {
  CHECK(poly_equal(pd(2), poly_mul(kX - k(1), kX - k(2))));
  CHECK_FALSE(poly_equal(kX, kX + kX));
  CHECK(poly_equal(SparsePoly(1), uni({})));
  CHECK(poly_equal(SparsePoly(1), uni({0, 0})));
}

TEST_CASE("integer roots on named examples") {
  CHECK(integer_roots(pd(5), 1000) == ints({1, 2, 3, 4, 5}));
  CHECK(integer_roots(uni({1, 0, 1}), 1000).empty());
  CHECK(integer_roots(uni({0, -1, 0, 1}), 1000) == ints({-1, 0, 1}));
  // Multiplicity does not count.
  CHECK(integer_roots(poly_mul(pd(2), pd(2)), 1000) == ints({1, 2}));
  CHECK(integer_roots(uni({0, 0, 0, 1}), 1000) == ints({0}));
  CHECK(integer_roots(k(7), 1000).empty());
}

TEST_CASE("integer roots error paths") {
  try {
    integer_roots(SparsePoly(1), 10);
    FAIL("expected ZeroPolynomial");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::ZeroPolynomial);
  }
  // Trailing coefficient is a product of two 100-bit primes.
  mpz_class p, q, start = mpz_class(1) << 100;
  mpz_nextprime(p.get_mpz_t(), start.get_mpz_t());
  mpz_nextprime(q.get_mpz_t(), p.get_mpz_t());
  SparsePoly hard = kX * kX - SparsePoly::constant(1, p * q);
  try {
    integer_roots(hard, 100);
    FAIL("expected FactorizationTooHard");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::FactorizationTooHard);
  }
}

TEST_CASE("root sets are exact: nothing outside, nothing spurious") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 150; ++trial) {
    SparsePoly f = k(1 + static_cast<long>(rng() % 3));
    int nroots = rng() % 4;
    for (int i = 0; i < nroots; ++i)
      f = f * (kX - k(static_cast<long>(rng() % 21) - 10));
    int noise = rng() % 3;
    for (int i = 0; i < noise; ++i) {
      std::vector<mpz_class> c(1 + rng() % 3);
      for (auto &v : c)
        v = static_cast<long>(rng() % 7) - 3;
      c.back() = 1 + static_cast<long>(rng() % 2);
      f = f * uni(c);
    }
    if (f.is_zero())
      continue;
    auto roots = integer_roots(f, 1u << 16);
    for (auto &r : roots)
      CHECK(f.evaluate(std::vector<mpz_class>{r}) == 0);
    mpz_class bound = 1;
    for (auto &[e, c] : f.terms())
      bound = std::max(bound, mpz_class(abs(c)));
    bound = cauchy_root_bound(f) + 1;
    REQUIRE(bound < 100000);
    long B = bound.get_si();
    std::size_t found = 0;
    for (long x = -B; x <= B; ++x) {
      if (f.evaluate(ints({x})) == 0) {
        ++found;
        CHECK(std::binary_search(roots.begin(), roots.end(), mpz_class(x)));
      }
    }
    CHECK(found == roots.size());
  }
}

TEST_CASE("n(pd(d)) = d") {
  for (unsigned d = 1; d <= 30; ++d) {
    auto roots = integer_roots(pd(d), 1u << 20);
    CHECK(roots.size() == d);
  }
}

TEST_CASE("monic division") {
  SparsePoly f = poly_mul(pd(3), uni({4, 0, 1}));
  auto qr = divide_monic(f, pd(3));
  CHECK(qr.quotient == uni({4, 0, 1}));
  CHECK(qr.remainder.is_zero());
  auto r2 = divide_monic(kX * kX * kX + k(1), pd(1));
  CHECK(r2.remainder == k(2));
  CHECK(divide_monic(k(5), pd(2)).quotient.is_zero());
}

TEST_CASE("factorization") {
  auto f = factorize(mpz_class(360), 1000);
  REQUIRE(f.size() == 3);
  CHECK(f[0].prime == 2);
  CHECK(f[0].exponent == 3);
  CHECK(f[2].prime == 5);
  // Cofactor beyond the trial budget goes through rho.
  mpz_class a("1000000007"), b("998244353");
  auto g = factorize(a * b * 12, 100);
  REQUIRE(g.size() == 4);
  CHECK(g[2].prime == b);
  CHECK(g[3].prime == a);
  CHECK(positive_divisors(mpz_class(-12), 10) == ints({1, 2, 3, 4, 6, 12}));
}

TEST_CASE("multivariate evaluation and renaming") {
  SparsePoly x1 = SparsePoly::variable(2, 0), x2 = SparsePoly::variable(2, 1);
  SparsePoly f = x1 * x1 * x2 - x2 + SparsePoly::constant(2, 3);
  std::vector<mpq_class> at{mpq_class(1, 2), mpq_class(2)};
  CHECK(f.evaluate(std::span<const mpq_class>(at)) == mpq_class(3, 2));
  std::vector<std::size_t> map{3, 0};
  SparsePoly g = f.rename(4, map);
  std::vector<mpz_class> pt{5, 0, 0, 2};
  CHECK(g.evaluate(std::span<const mpz_class>(pt)) == 2 * 2 * 5 - 5 + 3);
  CHECK(f.to_string() == "x1^2*x2 - x2 + 3");
  CHECK(pd(2).to_string() == "x^2 - 3*x + 2");
}
