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

#ifndef TAUFORGE_FINGERPRINT_HPP
#define TAUFORGE_FINGERPRINT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tauforge/polynomial.hpp"
#include "tauforge/slp.hpp"

namespace tauforge {

inline constexpr std::uint64_t kDefaultSeed = 0x7a0f09e5eedull;
inline constexpr std::size_t kDefaultFingerprintPairs = 8;

/// A list of (prime, point) evaluation pairs. Evaluating a program at every
/// pair gives one residue per pair.
struct EvalBasis {
  std::size_t arity = 0;
  std::vector<std::uint64_t> primes;
  /// points[k] has `arity` coordinates, reduced mod primes[k].
  std::vector<std::vector<std::uint64_t>> points;

  std::size_t size() const noexcept { return primes.size(); }

  /// Random primes just below 2^61 and points in [2, p - 2], fully
  /// determined by `seed`.
  static EvalBasis random(std::uint64_t seed, std::size_t arity,
                          std::size_t pairs = kDefaultFingerprintPairs);

  /// Appends the pairs of `other` (same arity).
  void append(const EvalBasis &other);
};

/// Residues of a program's output under an EvalBasis. Programs computing the
/// same polynomial always agree; different polynomials collide only with
/// negligible probability.
struct Fingerprint {
  std::vector<std::uint64_t> values;
  std::uint64_t seed = 0;

  bool is_zero() const;
  friend bool operator==(const Fingerprint &, const Fingerprint &) = default;
};

Fingerprint fingerprint(const Slp &program, const EvalBasis &basis,
                        std::uint64_t seed);
Fingerprint fingerprint(const SparsePoly &poly, const EvalBasis &basis,
                        std::uint64_t seed);

/// Order-sensitive hash of a residue vector, for deduplication tables.
struct ResidueHash {
  std::size_t operator()(const std::vector<std::uint64_t> &v) const noexcept;
};

}  // namespace tauforge

#endif  // TAUFORGE_FINGERPRINT_HPP
