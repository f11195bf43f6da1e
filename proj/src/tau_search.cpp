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

#include "tauforge/tau_search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <unordered_map>

#include "tauforge/parallel.hpp"

namespace tauforge {

std::uint64_t enumerate_canonical_slps(
    std::size_t arity, std::size_t length, std::uint64_t seed,
    const std::function<void(const Slp &, const Fingerprint &)> &visitor,
    std::size_t hard_cap) {
  CanonicalEnumerator en(arity, length, EvalBasis::random(seed, arity), hard_cap);
  return en.run_all([&](const ProgramView &v) {
    visitor(v.to_slp(),
            Fingerprint{{v.residues.begin(), v.residues.end()}, seed});
    return false;
  });
}

std::optional<TauResult> tau_exact(const SparsePoly &target, std::size_t max_len,
                                   const SearchConfig &config) {
  if (target.is_zero())
    throw Error(Errc::ZeroPolynomial, "tau of the zero polynomial");
  if (target.arity() > 2)
    throw Error(Errc::ArityMismatch, "tau search supports arity <= 2");
  if (max_len > config.hard_cap)
    throw Error(Errc::CapExceeded, "max_len " + std::to_string(max_len) +
                                       " exceeds the cap of " +
                                       std::to_string(config.hard_cap));
  const std::size_t n = target.arity();
  EvalBasis basis = EvalBasis::random(config.seed, n, config.fingerprint_pairs);
  Fingerprint want = fingerprint(target, basis, config.seed);

  for (std::size_t len = std::max<std::size_t>(n, 1); len <= max_len; ++len) {
    CanonicalEnumerator en(n, len, basis, config.hard_cap);
    std::vector<std::optional<Slp>> found(en.chunk_count());
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    parallel_for(en.chunk_count(), config.workers, [&](std::size_t c) {
      if (c > best.load())
        return;  // an earlier chunk already holds the lexicographic winner
      en.run_chunk(c, [&](const ProgramView &v) {
        if (!std::equal(v.residues.begin(), v.residues.end(), want.values.begin()))
          return false;
        Slp candidate = v.to_slp();
        if (expand_to_polynomial(candidate, config.term_cap) != target)
          return false;
        found[c] = std::move(candidate);
        std::size_t cur = best.load();
        while (c < cur && !best.compare_exchange_weak(cur, c)) {
        }
        return true;
      });
    });
    for (auto &f : found)
      if (f)
        return TauResult{len, std::move(*f), true};
  }
  return std::nullopt;
}

Slp repeated_squaring_witness(unsigned n) {
  std::vector<Instruction> body;
  std::uint32_t acc = 1;
  for (unsigned i = 0; i < n; ++i) {
    body.push_back({Op::Mul, acc, acc});
    acc = static_cast<std::uint32_t>(1 + body.size());
  }
  body.push_back({Op::Sub, acc, 0});
  return validate_slp(1, std::move(body));
}

namespace {

// Outcome codes cached per distinct fingerprint; non-negative values are
// root counts.
enum : int { kZero = -1, kSkipExpansion = -2, kSkipFactorization = -3 };

struct ChunkStats {
  std::uint64_t visited = 0;
  std::size_t best = 0;
  std::optional<std::vector<Instruction>> witness;
  std::uint64_t skipped_expansion = 0;
  std::uint64_t skipped_factorization = 0;
  std::uint64_t zeros = 0;
};

int classify(const Slp &program, std::size_t term_cap, std::uint64_t factor_budget) {
  SparsePoly f;
  try {
    f = expand_to_polynomial(program, term_cap);
  } catch (const Error &e) {
    if (e.code() == Errc::TermCapExceeded)
      return kSkipExpansion;
    throw;
  }
  if (f.is_zero())
    return kZero;
  try {
    return static_cast<int>(integer_roots(f, factor_budget).size());
  } catch (const Error &e) {
    if (e.code() == Errc::FactorizationTooHard)
      return kSkipFactorization;
    throw;
  }
}

}  // namespace

std::vector<ScanRow> conjecture_scan(std::size_t max_len,
                                     std::uint64_t factor_budget,
                                     const SearchConfig &config) {
  if (max_len == 0)
    throw Error(Errc::CapExceeded, "max_len must be positive");
  if (max_len > config.hard_cap)
    throw Error(Errc::CapExceeded, "max_len " + std::to_string(max_len) +
                                       " exceeds the cap of " +
                                       std::to_string(config.hard_cap));
  EvalBasis basis = EvalBasis::random(config.seed, 1, config.fingerprint_pairs);
  std::vector<ScanRow> rows;
  for (std::size_t len = 1; len <= max_len; ++len) {
    CanonicalEnumerator en(1, len, basis, config.hard_cap);
    std::vector<ChunkStats> stats(en.chunk_count());
    parallel_for(en.chunk_count(), config.workers, [&](std::size_t c) {
      ChunkStats &st = stats[c];
      std::unordered_map<std::vector<std::uint64_t>, int, ResidueHash> cache;
      std::vector<std::uint64_t> key;
      st.visited = en.run_chunk(c, [&](const ProgramView &v) {
        key.assign(v.residues.begin(), v.residues.end());
        auto it = cache.find(key);
        int outcome;
        if (it != cache.end()) {
          outcome = it->second;
        } else {
          outcome = classify(v.to_slp(), config.term_cap, factor_budget);
          cache.emplace(key, outcome);
        }
        switch (outcome) {
        case kZero:
          ++st.zeros;
          break;
        case kSkipExpansion:
          ++st.skipped_expansion;
          break;
        case kSkipFactorization:
          ++st.skipped_factorization;
          break;
        default:
          if (!st.witness || static_cast<std::size_t>(outcome) > st.best) {
            st.best = static_cast<std::size_t>(outcome);
            st.witness.emplace(v.body.begin(), v.body.end());
          }
        }
        return false;
      });
    });
    ScanRow row;
    row.length = len;
    for (ChunkStats &st : stats) {
      row.programs_visited += st.visited;
      row.skipped_expansion += st.skipped_expansion;
      row.skipped_factorization += st.skipped_factorization;
      row.zero_polynomials += st.zeros;
      if (st.witness && (!row.witness || st.best > row.max_integer_roots)) {
        row.max_integer_roots = st.best;
        row.witness = make_slp_unchecked(1, std::move(*st.witness));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<PdMultiple> pd_multiple_search(unsigned d, std::size_t max_len,
                                             const SearchConfig &config) {
  if (d < 1 || d > 30)
    throw Error(Errc::ParamOutOfRange, "pd probe needs 1 <= d <= 30");
  if (max_len > config.hard_cap)
    throw Error(Errc::CapExceeded, "max_len " + std::to_string(max_len) +
                                       " exceeds the cap of " +
                                       std::to_string(config.hard_cap));
  // Pairs [0, 2d): the points 1..d under two primes, a cheap vanishing
  // screen. The remaining pairs are the ordinary fingerprint.
  constexpr std::size_t kScreenPrimes = 2;
  EvalBasis screen_primes = EvalBasis::random(config.seed ^ 0x5eedu, 1, kScreenPrimes);
  EvalBasis basis;
  basis.arity = 1;
  for (std::size_t j = 0; j < kScreenPrimes; ++j)
    for (unsigned i = 1; i <= d; ++i) {
      basis.primes.push_back(screen_primes.primes[j]);
      basis.points.push_back({i});
    }
  const std::size_t screen = basis.size();
  basis.append(EvalBasis::random(config.seed, 1, config.fingerprint_pairs));
  const SparsePoly target = pd(d);

  for (std::size_t len = 1; len <= max_len; ++len) {
    CanonicalEnumerator en(1, len, basis, config.hard_cap);
    std::vector<std::optional<PdMultiple>> found(en.chunk_count());
    std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
    parallel_for(en.chunk_count(), config.workers, [&](std::size_t c) {
      if (c > best.load())
        return;
      en.run_chunk(c, [&](const ProgramView &v) {
        auto r = v.residues;
        if (!std::all_of(r.begin(), r.begin() + screen, [](auto x) { return x == 0; }))
          return false;
        if (std::all_of(r.begin() + screen, r.end(), [](auto x) { return x == 0; }))
          return false;
        Slp candidate = v.to_slp();
        for (unsigned i = 1; i <= d; ++i) {
          mpz_class at = i;
          if (evaluate(candidate, std::span<const mpz_class>(&at, 1)) != 0)
            return false;
        }
        SparsePoly f = expand_to_polynomial(candidate, config.term_cap);
        if (f.is_zero())
          return false;
        UnivariateDivision div = divide_monic(f, target);
        if (!div.remainder.is_zero())
          return false;
        found[c] = PdMultiple{len, std::move(candidate), std::move(f),
                              std::move(div.quotient)};
        std::size_t cur = best.load();
        while (c < cur && !best.compare_exchange_weak(cur, c)) {
        }
        return true;
      });
    });
    for (auto &f : found)
      if (f)
        return std::move(*f);
  }
  return std::nullopt;
}

}  // namespace tauforge
