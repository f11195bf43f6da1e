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

#include <map>
#include <random>

#include "doctest.h"
#include "tauforge/polynomial.hpp"
#include "tauforge/slp.hpp"
#include "test_util.hpp"

using namespace tauforge;
using tauforge::testing::random_prime;
using tauforge::testing::random_slp;
using tauforge::testing::x_minus;
using tauforge::testing::x_squared_minus_one;

namespace {

mpz_class eval_int(const Slp &p, std::vector<mpz_class> x) {
  return evaluate(p, std::span<const mpz_class>(x));
}

Errc code_of(auto &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::BadFormat;
}

// Dense univariate expansion by naive term-by-term products; returns the
// first line whose monomial count exceeds `cap`, or 0 if none does.
std::size_t first_line_over_cap(const Slp &p, std::size_t cap) {
  std::vector<std::map<unsigned, mpz_class>> lines;
  lines.push_back({{0u, 1}});
  lines.push_back({{1u, 1}});
  auto count = [](const std::map<unsigned, mpz_class> &m) {
    std::size_t n = 0;
    for (auto &[e, c] : m)
      n += c != 0;
    return n;
  };
  for (std::size_t i = 0; i < p.body().size(); ++i) {
    const auto &ins = p.body()[i];
    std::map<unsigned, mpz_class> out;
    const auto &a = lines[ins.left];
    const auto &b = lines[ins.right];
    if (ins.op == Op::Mul) {
      for (auto &[ea, ca] : a)
        for (auto &[eb, cb] : b)
          out[ea + eb] += ca * cb;
    } else {
      out = a;
      for (auto &[eb, cb] : b)
        out[eb] += ins.op == Op::Add ? cb : mpz_class(-cb);
    }
    lines.push_back(out);
    if (count(out) > cap)
      return 2 + i;
  }
  return 0;
}

}  // namespace

TEST_CASE("validate_slp accepts well-formed programs") {
  Slp p = x_squared_minus_one();
  CHECK(p.length() == 3);
  CHECK(p.arity() == 1);
  Slp bare = validate_slp(1, {});
  CHECK(bare.length() == 1);
  CHECK(eval_int(bare, {42}) == 42);
}

TEST_CASE("validate_slp rejects forward references") {
  CHECK(code_of([] { validate_slp(1, {{Op::Add, 3, 0}}); }) == Errc::ForwardReference);
  CHECK(code_of([] { validate_slp(1, {{Op::Add, 2, 0}}); }) == Errc::ForwardReference);
  CHECK(code_of([] { validate_slp(0, {{Op::Mul, 0, 1}}); }) == Errc::ForwardReference);
}

TEST_CASE("eval over each ring") {
  Slp p = x_squared_minus_one();
  auto z = eval(p, RingPoint::integers({3}));
  CHECK(std::get<mpz_class>(z) == 8);
  auto m = eval(p, RingPoint::mod_p(7, {3}));
  CHECK(std::get<ModValue>(m).value == 1);
  auto q = eval(p, RingPoint::rationals({mpq_class(1, 2)}));
  CHECK(std::get<mpq_class>(q) == mpq_class(-3, 4));
  CHECK(code_of([] { RingPoint::mod_p(9, {1}); }) == Errc::BadFormat);
  CHECK(code_of([] { RingPoint::mod_p(2, {1}); }) == Errc::BadFormat);
  CHECK(code_of([&] { eval(p, RingPoint::integers({1, 2})); }) == Errc::ArityMismatch);
}

TEST_CASE("expand_to_polynomial") {
  SparsePoly x2m1 = expand_to_polynomial(x_squared_minus_one(), 100);
  CHECK(x2m1 == SparsePoly::from_univariate(std::vector<mpz_class>{-1, 0, 1}));
  Slp x4 = validate_slp(1, {{Op::Mul, 1, 1}, {Op::Mul, 2, 2}, {Op::Sub, 3, 0}});
  CHECK(expand_to_polynomial(x4, 100) ==
        SparsePoly::from_univariate(std::vector<mpz_class>{-1, 0, 0, 0, 1}));

  // x^(2^20) by repeated squaring stays at one or two terms per line.
  std::vector<Instruction> sq;
  for (std::uint32_t i = 0; i < 20; ++i)
    sq.push_back({Op::Mul, i == 0 ? 1u : 1 + i, i == 0 ? 1u : 1 + i});
  SparsePoly big = expand_to_polynomial(validate_slp(1, sq), 10);
  CHECK(big.term_count() == 1);
  CHECK(big.coefficient({1u << 20}) == 1);
}

TEST_CASE("term cap overflow is reported at the line the naive oracle flags") {
  // (x + 1)^(2^k): line 2 is x + 1, then k squarings.
  std::vector<Instruction> body{{Op::Add, 1, 0}};
  for (std::uint32_t i = 0; i < 6; ++i)
    body.push_back({Op::Mul, 2 + i, 2 + i});
  Slp dense = validate_slp(1, body);
  const std::size_t cap = 10;
  std::size_t expected_line = first_line_over_cap(dense, cap);
  REQUIRE(expected_line == 6);  // (x+1)^16 has 17 terms
  try {
    expand_to_polynomial(dense, cap);
    FAIL("expected TermCapExceeded");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::TermCapExceeded);
    CHECK(std::string(e.what()).find("line 6 ") != std::string::npos);
  }
  CHECK_NOTHROW(expand_to_polynomial(dense, 65));
}

TEST_CASE("compose") {
  Slp x_plus_1 = validate_slp(1, {{Op::Add, 1, 0}});
  std::vector<Slp> inner{x_plus_1};
  Slp c = compose(x_squared_minus_one(), inner);
  for (int t = -3; t <= 3; ++t)
    CHECK(eval_int(c, {t}) == (t + 1) * (t + 1) - 1);
  CHECK(c.length() <= x_plus_1.length() + x_squared_minus_one().body().size());

  Slp g = random_slp(*new std::mt19937_64(5), 2, 6);
  std::vector<Slp> gs{g};
  Slp id_outer = compose(validate_slp(1, {}), gs);
  std::vector<Slp> ids{variable(1, 0)};
  Slp f = x_squared_minus_one();
  Slp f_id = compose(f, ids);
  for (int a = -2; a <= 2; ++a) {
    for (int b = -2; b <= 2; ++b)
      CHECK(eval_int(id_outer, {a, b}) == eval_int(g, {a, b}));
    CHECK(eval_int(f_id, {a}) == eval_int(f, {a}));
  }
  std::vector<Slp> wrong{x_plus_1, x_plus_1};
  CHECK(code_of([&] { compose(f, wrong); }) == Errc::ArityMismatch);
  std::vector<Slp> mixed{validate_slp(1, {}), validate_slp(2, {})};
  CHECK(code_of([&] { compose(validate_slp(2, {}), mixed); }) == Errc::ArityMismatch);
}

TEST_CASE("compose respects the length bound on random programs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t k = 1 + rng() % 3;
    std::size_t n = 1 + rng() % 3;
    Slp outer = random_slp(rng, k, 5);
    std::vector<Slp> inners;
    std::size_t total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      inners.push_back(random_slp(rng, n, 5));
      total += inners.back().length();
    }
    Slp c = compose(outer, inners);
    CHECK(c.length() <= total + outer.body().size());
    std::vector<mpz_class> x(n);
    for (auto &v : x)
      v = static_cast<long>(rng() % 7) - 3;
    std::vector<mpz_class> inner_vals;
    for (auto &in : inners)
      inner_vals.push_back(evaluate(in, std::span<const mpz_class>(x)));
    CHECK(evaluate(c, std::span<const mpz_class>(x)) ==
          evaluate(outer, std::span<const mpz_class>(inner_vals)));
  }
}

TEST_CASE("product") {
  std::vector<Slp> two{x_minus(1), x_minus(2)};
  Slp p = product(two);
  for (int t = 0; t <= 3; ++t)
    CHECK(eval_int(p, {t}) == t * t - 3 * t + 2);
  CHECK(p.length() == 1 + x_minus(1).body().size() + x_minus(2).body().size() + 1);

  std::vector<Slp> one{x_squared_minus_one()};
  CHECK(product(one) == x_squared_minus_one());
  CHECK(code_of([] { product(std::span<const Slp>{}); }) == Errc::EmptyList);

  for (unsigned d = 1; d <= 8; ++d) {
    std::vector<Slp> fs;
    std::size_t bodies = 0;
    for (unsigned i = 1; i <= d; ++i) {
      fs.push_back(x_minus(i));
      bodies += fs.back().body().size();
    }
    Slp pdp = product(fs);
    CHECK(pdp.length() == 1 + bodies + (d - 1));
    for (int t = -1; t <= static_cast<int>(d) + 1; ++t) {
      bool root = t >= 1 && t <= static_cast<int>(d);
      CHECK((eval_int(pdp, {t}) == 0) == root);
    }
  }
}

TEST_CASE("slice, pruning and positional products") {
  Slp p = validate_slp(1, {{Op::Add, 1, 0}, {Op::Mul, 1, 1}, {Op::Sub, 3, 2}});
  Slp s = slice(p, 2);
  CHECK(s.body().size() == 1);
  CHECK(eval_int(s, {4}) == 5);
  Slp var = slice(p, 1);
  CHECK(eval_int(var, {4}) == 4);
  std::vector<std::size_t> pos{2, 3};
  Slp prod = product_of_positions(p, pos);
  CHECK(eval_int(prod, {4}) == 5 * 16);
  CHECK(prod.length() == 4);  // x+1, x*x, product; the subtraction is dead
  Slp one = product_of_positions(p, {});
  CHECK(eval_int(one, {4}) == 1);
  CHECK(prune_dead_lines(p) == p);
}

TEST_CASE("integer constants from 1 alone") {
  for (int c = -40; c <= 40; ++c) {
    Slp k = integer_constant(1, c);
    CHECK(eval_int(k, {7}) == c);
  }
  Slp big = integer_constant(0, mpz_class("1000000007"));
  CHECK(evaluate(big, std::span<const mpz_class>{}) == mpz_class("1000000007"));
  CHECK(big.length() <= 2 * 30 + 1);
}

TEST_CASE("text format") {
  Slp p = parse_slp("arity 1\n%2 = mul %1 %1\n%3 = sub %2 %0\n");
  CHECK(p == x_squared_minus_one());
  CHECK(format_slp(p) == "arity 1\n%2 = mul %1 %1\n%3 = sub %2 %0\n");
  CHECK(code_of([] { parse_slp("arity 1\n%2 = mul %5 %1\n"); }) == Errc::ForwardReference);
  CHECK(code_of([] { parse_slp("arity 1\n%3 = mul %1 %1\n"); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse_slp("arity x\n"); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse_slp("arity 1\n%2 = div %1 %1\n"); }) == Errc::SyntaxError);
  CHECK(code_of([] { parse_slp(""); }) == Errc::SyntaxError);
  try {
    parse_slp("arity 1\n%2 = mul %1 %1\n%3 = pow %2 %0\n");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("format/parse roundtrip on random programs") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    Slp p = random_slp(rng, rng() % 4, 12);
    std::string text = format_slp(p);
    Slp back = parse_slp(text);
    CHECK(back == p);
    CHECK(format_slp(back) == text);
  }
}

TEST_CASE("evaluation commutes with reduction mod p") {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 1200; ++trial) {
    std::size_t n = 1 + rng() % 3;
    Slp p = random_slp(rng, n, 10);
    std::uint64_t prime = random_prime(rng);
    std::vector<mpz_class> x;
    std::vector<std::uint64_t> xr;
    for (std::size_t i = 0; i < n; ++i) {
      mpz_class v = static_cast<long>(rng() % 2001) - 1000;
      x.push_back(v);
      xr.push_back(reduce_mod(v, prime));
    }
    mpz_class exact = evaluate(p, std::span<const mpz_class>(x));
    CHECK(reduce_mod(exact, prime) == evaluate_mod(p, xr, prime));
  }
}

TEST_CASE("expansion agrees with evaluation") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 2;
    Slp p = random_slp(rng, n, 7);
    SparsePoly f = expand_to_polynomial(p, 1u << 16);
    for (int k = 0; k < 20; ++k) {
      std::vector<mpz_class> x;
      for (std::size_t i = 0; i < n; ++i)
        x.push_back(static_cast<long>(rng() % 21) - 10);
      CHECK(f.evaluate(std::span<const mpz_class>(x)) ==
            evaluate(p, std::span<const mpz_class>(x)));
    }
  }
}
