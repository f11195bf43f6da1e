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

#ifndef TAUFORGE_TAU_SEARCH_HPP
#define TAUFORGE_TAU_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "tauforge/enumerate.hpp"
#include "tauforge/fingerprint.hpp"
#include "tauforge/polynomial.hpp"
#include "tauforge/slp.hpp"

namespace tauforge {

struct SearchConfig {
  std::uint64_t seed = kDefaultSeed;
  std::size_t workers = 1;
  std::size_t term_cap = 1u << 16;
  std::size_t hard_cap = kDefaultLengthCap;
  std::size_t fingerprint_pairs = kDefaultFingerprintPairs;
};

struct TauResult {
  std::size_t tau = 0;
  Slp witness;
  bool verified_exactly = false;
};

/// Smallest length of a program computing `target`, by iterative deepening
/// over lengths 1..max_len. Fingerprint matches are confirmed by exact
/// expansion; the witness is the lexicographically least program at the
/// minimal length. nullopt means no program of length <= max_len exists.
/// Supports arity 1 and 2.
std::optional<TauResult> tau_exact(const SparsePoly &target, std::size_t max_len,
                                   const SearchConfig &config = {});

/// x^(2^n) - 1 by n squarings and one subtraction: length 2 + n.
Slp repeated_squaring_witness(unsigned n);

struct ScanRow {
  std::size_t length = 0;
  std::uint64_t programs_visited = 0;
  /// Zero when every program at this length computed the zero polynomial or
  /// was skipped; `witness` is then absent.
  std::size_t max_integer_roots = 0;
  std::optional<Slp> witness;
  std::uint64_t skipped_expansion = 0;
  std::uint64_t skipped_factorization = 0;
  /// Programs computing the zero polynomial, which has no finite root count.
  std::uint64_t zero_polynomials = 0;

  friend bool operator==(const ScanRow &, const ScanRow &) = default;
};

/// Maximum number of distinct integer roots over all canonical univariate
/// programs of each length 1..max_len.
std::vector<ScanRow> conjecture_scan(std::size_t max_len,
                                     std::uint64_t factor_budget,
                                     const SearchConfig &config = {});

struct PdMultiple {
  std::size_t length = 0;
  Slp witness;
  SparsePoly expansion{1};
  /// expansion / pd(d); the remainder was checked to be zero.
  SparsePoly cofactor{1};
};

/// Shortest program computing a nonzero multiple of pd(d), d <= 30.
std::optional<PdMultiple> pd_multiple_search(unsigned d, std::size_t max_len,
                                             const SearchConfig &config = {});

}  // namespace tauforge

#endif  // TAUFORGE_TAU_SEARCH_HPP
