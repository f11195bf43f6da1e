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

#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "tauforge/enumerate.hpp"
#include "tauforge/tau_search.hpp"

using namespace tauforge;

namespace {

// Every program of `length` with no canonical restriction at all.
void raw_programs(std::size_t arity, std::size_t length,
                  const std::function<void(const std::vector<Instruction> &)> &fn) {
  std::vector<Instruction> body;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos > length) {
      fn(body);
      return;
    }
    for (Op op : {Op::Add, Op::Sub, Op::Mul})
      for (std::uint32_t l = 0; l < pos; ++l)
        for (std::uint32_t r = 0; r < pos; ++r) {
          body.push_back({op, l, r});
          rec(pos + 1);
          body.pop_back();
        }
  };
  rec(arity + 1);
}

bool is_canonical(std::size_t arity, const std::vector<Instruction> &body) {
  std::vector<int> used(arity + body.size() + 1, 0);
  for (const auto &ins : body) {
    if (ins.op != Op::Sub && ins.left > ins.right)
      return false;
    used[ins.left] = used[ins.right] = 1;
  }
  for (std::size_t p = arity + 1; p < arity + body.size(); ++p)
    if (!used[p])
      return false;
  return true;
}

std::uint64_t oracle_count(std::size_t arity, std::size_t length) {
  if (length < arity)
    return 0;
  std::uint64_t n = 0;
  raw_programs(arity, length, [&](const auto &b) { n += is_canonical(arity, b); });
  return n;
}

std::size_t brute_root_count(const SparsePoly &f) {
  mpz_class bound = cauchy_root_bound(f);
  std::size_t n = 0;
  for (long x = -bound.get_si(); x <= bound.get_si(); ++x)
    n += f.evaluate(std::vector<mpz_class>{x}) == 0;
  return n;
}

std::uint64_t count_at(std::size_t arity, std::size_t len) {
  return enumerate_canonical_slps(arity, len, kDefaultSeed,
                                  [](const Slp &, const Fingerprint &) {});
}

}  // namespace

TEST_CASE("length-2 enumeration is the ten one-instruction programs") {
  std::vector<std::vector<Instruction>> seen;
  std::uint64_t n = enumerate_canonical_slps(1, 2, 1, [&](const Slp &p, const Fingerprint &) {
    seen.push_back(p.body());
  });
  CHECK(n == 10);
  std::vector<std::vector<Instruction>> expected{
      {{Op::Add, 0, 0}}, {{Op::Add, 0, 1}}, {{Op::Add, 1, 1}}, {{Op::Sub, 0, 0}},
      {{Op::Sub, 0, 1}}, {{Op::Sub, 1, 0}}, {{Op::Sub, 1, 1}}, {{Op::Mul, 0, 0}},
      {{Op::Mul, 0, 1}}, {{Op::Mul, 1, 1}}};
  CHECK(seen == expected);
  CHECK(count_at(1, 1) == 1);
}

TEST_CASE("enumeration counts match a filter over all raw programs") {
  std::uint64_t prev = 0;
  for (std::size_t len = 1; len <= 5; ++len) {
    std::uint64_t got = count_at(1, len);
    CHECK(got == oracle_count(1, len));
    CHECK(got > prev);
    prev = got;
  }
  for (std::size_t len = 2; len <= 4; ++len)
    CHECK(count_at(2, len) == oracle_count(2, len));
  CHECK(count_at(2, 1) == 0);
}

TEST_CASE("enumeration order is lexicographic and fingerprints are consistent") {
  std::vector<Instruction> prev;
  bool first = true;
  EvalBasis basis = EvalBasis::random(42, 1);
  enumerate_canonical_slps(1, 4, 42, [&](const Slp &p, const Fingerprint &fp) {
    if (!first)
      CHECK(prev < p.body());
    first = false;
    prev = p.body();
    CHECK(fp == fingerprint(p, basis, 42));
  });
}

TEST_CASE("enumeration refuses lengths past the cap") {
  try {
    count_at(1, 9);
    FAIL("expected CapExceeded");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::CapExceeded);
  }
}

TEST_CASE("fingerprints never merge distinct polynomials up to length 5") {
  std::map<std::vector<std::uint64_t>, SparsePoly> seen;
  std::size_t programs = 0;
  for (std::size_t len = 1; len <= 5; ++len) {
    enumerate_canonical_slps(1, len, kDefaultSeed, [&](const Slp &p, const Fingerprint &fp) {
      ++programs;
      SparsePoly f = expand_to_polynomial(p, 1u << 16);
      auto [it, inserted] = seen.emplace(fp.values, f);
      if (!inserted && it->second != f)
        FAIL("fingerprint collision: " << it->second.to_string() << " vs " << f.to_string());
    });
  }
  MESSAGE(programs << " programs, " << seen.size() << " distinct polynomials");
}

TEST_CASE("tau_exact on the x^(2^n) - 1 family") {
  SparsePoly x = SparsePoly::variable(1, 0);
  SparsePoly one = SparsePoly::constant(1, 1);

  auto r1 = tau_exact(x, 3);
  REQUIRE(r1);
  CHECK(r1->tau == 1);
  CHECK(r1->witness.body().empty());

  auto r2 = tau_exact(x * x - one, 4);
  REQUIRE(r2);
  CHECK(r2->tau == 3);
  CHECK(r2->verified_exactly);
  CHECK(expand_to_polynomial(r2->witness, 100) == x * x - one);

  SparsePoly x4m1 = x * x * x * x - one;
  // Oracle: no program at all of length <= 3 computes x^4 - 1.
  for (std::size_t len = 1; len <= 3; ++len)
    raw_programs(1, len, [&](const auto &b) {
      CHECK(expand_to_polynomial(validate_slp(1, b), 1000) != x4m1);
    });
  auto r3 = tau_exact(x4m1, 5);
  REQUIRE(r3);
  CHECK(r3->tau == 4);
  CHECK(r3->witness.length() == 4);

  CHECK_FALSE(tau_exact(x4m1, 3));
}

TEST_CASE("tau_exact witnesses are the lexicographically least") {
  SparsePoly x = SparsePoly::variable(1, 0);
  SparsePoly one = SparsePoly::constant(1, 1);
  SparsePoly target = x * x - x;
  std::optional<std::vector<Instruction>> first;
  enumerate_canonical_slps(1, 3, 7, [&](const Slp &p, const Fingerprint &) {
    if (!first && expand_to_polynomial(p, 100) == target)
      first = p.body();
  });
  REQUIRE(first);
  for (std::size_t w : {1, 3}) {
    SearchConfig cfg;
    cfg.workers = w;
    auto r = tau_exact(target, 4, cfg);
    REQUIRE(r);
    CHECK(r->witness.body() == *first);
  }
}

TEST_CASE("tau_exact on two variables and error paths") {
  SparsePoly x1 = SparsePoly::variable(2, 0), x2 = SparsePoly::variable(2, 1);
  auto r = tau_exact(x1 * x2 + x1, 4);
  REQUIRE(r);
  CHECK(r->tau == 4);  // x1 * (x2 + 1)
  auto r2 = tau_exact(x1, 4);
  REQUIRE(r2);
  CHECK(r2->tau == 3);  // needs x1 * 1 as an explicit line
  CHECK_THROWS_AS(tau_exact(SparsePoly(1), 3), Error);
  SearchConfig cfg;
  try {
    tau_exact(x1, 9, cfg);
    FAIL("expected CapExceeded");
  } catch (const Error &e) {
    CHECK(e.code() == Errc::CapExceeded);
  }
}

TEST_CASE("every enumerated polynomial has tau at most its length") {
  for (std::size_t len = 1; len <= 3; ++len) {
    std::set<std::vector<std::uint64_t>> done;
    enumerate_canonical_slps(1, len, kDefaultSeed, [&](const Slp &p, const Fingerprint &fp) {
      if (!done.insert(fp.values).second)
        return;
      SparsePoly f = expand_to_polynomial(p, 1000);
      if (f.is_zero())
        return;
      auto r = tau_exact(f, len);
      REQUIRE(r);
      CHECK(r->tau <= len);
    });
  }
}

TEST_CASE("repeated squaring witnesses") {
  SparsePoly x = SparsePoly::variable(1, 0);
  for (unsigned n = 1; n <= 20; ++n) {
    Slp w = repeated_squaring_witness(n);
    CHECK(w.length() == 2 + n);
    SparsePoly f = expand_to_polynomial(w, 4);
    CHECK(f.term_count() == 2);
    CHECK(f.coefficient({1u << n}) == 1);
    CHECK(f.coefficient({0}) == -1);
  }
}

TEST_CASE("conjecture scan rows") {
  auto rows = conjecture_scan(4, 1u << 16);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].length == 1);
  CHECK(rows[0].max_integer_roots == 1);
  REQUIRE(rows[0].witness);
  CHECK(rows[0].witness->body().empty());
  CHECK(rows[0].programs_visited == 1);

  // Oracle for length 3: expand every canonical program, count roots by
  // scanning the Cauchy interval.
  std::size_t best = 0;
  enumerate_canonical_slps(1, 3, 1, [&](const Slp &p, const Fingerprint &) {
    SparsePoly f = expand_to_polynomial(p, 1000);
    if (!f.is_zero())
      best = std::max(best, brute_root_count(f));
  });
  CHECK(rows[2].max_integer_roots == best);
  CHECK(rows[2].max_integer_roots >= 2);
  for (const auto &row : rows) {
    CHECK(row.max_integer_roots <= (std::size_t{1} << row.length));
    CHECK(row.skipped_expansion == 0);
    CHECK(row.skipped_factorization == 0);
    REQUIRE(row.witness);
    auto roots = integer_roots(expand_to_polynomial(*row.witness, 1000), 1000);
    CHECK(roots.size() == row.max_integer_roots);
  }
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].max_integer_roots >= rows[i - 1].max_integer_roots);
}

TEST_CASE("conjecture scan is independent of worker count") {
  SearchConfig one, many;
  many.workers = 4;
  CHECK(conjecture_scan(4, 1000, one) == conjecture_scan(4, 1000, many));
}

TEST_CASE("conjecture scan reports skipped expansions") {
  SearchConfig cfg;
  cfg.term_cap = 2;
  auto rows = conjecture_scan(3, 1000, cfg);
  CHECK(rows[2].skipped_expansion > 0);
  std::uint64_t accounted = rows[2].skipped_expansion + rows[2].zero_polynomials;
  CHECK(accounted < rows[2].programs_visited);
}

TEST_CASE("pd multiple search") {
  auto r1 = pd_multiple_search(1, 4);
  REQUIRE(r1);
  CHECK(r1->length == 2);
  // Lexicographic tie-break picks 1 - x over x - 1; both are multiples of p_1.
  CHECK(r1->witness.body() == std::vector<Instruction>{{Op::Sub, 0, 1}});
  CHECK(r1->expansion == -pd(1));

  // Oracle for d = 2: the first length at which some raw program vanishes
  // on {1, 2} without being identically zero.
  std::size_t oracle_len = 0;
  for (std::size_t len = 1; len <= 5 && !oracle_len; ++len)
    raw_programs(1, len, [&](const auto &b) {
      Slp p = validate_slp(1, b);
      auto at = [&](long v) {
        mpz_class x = v;
        return evaluate(p, std::span<const mpz_class>(&x, 1));
      };
      if (at(1) == 0 && at(2) == 0 && !expand_to_polynomial(p, 1000).is_zero())
        oracle_len = len;
    });
  REQUIRE(oracle_len > 0);
  auto r2 = pd_multiple_search(2, 5);
  REQUIRE(r2);
  CHECK(r2->length == oracle_len);
  CHECK(divide_monic(r2->expansion, pd(2)).remainder.is_zero());
  CHECK(poly_mul(r2->cofactor, pd(2)) == r2->expansion);

  for (unsigned d = 1; d <= 5; ++d) {
    auto r = pd_multiple_search(d, 5);
    if (!r)
      continue;
    std::size_t lg = 0;
    while ((1u << lg) < d)
      ++lg;
    CHECK(r->length >= lg + 1);
  }
  CHECK_THROWS_AS(pd_multiple_search(31, 3), Error);
}
