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

#include "tauforge/fingerprint.hpp"

#include <algorithm>
#include <random>

#include "tauforge/modular.hpp"

namespace tauforge {

EvalBasis EvalBasis::random(std::uint64_t seed, std::size_t arity,
                            std::size_t pairs) {
  std::mt19937_64 rng(seed);
  EvalBasis basis;
  basis.arity = arity;
  constexpr std::uint64_t top = 1ull << 61;
  constexpr std::uint64_t window = 1ull << 40;
  for (std::size_t k = 0; k < pairs; ++k) {
    std::uint64_t p = top - 1 - rng() % window;
    p |= 1;
    while (!is_prime_u64(p))
      p -= 2;
    basis.primes.push_back(p);
    std::vector<std::uint64_t> point(arity);
    for (auto &c : point)
      c = 2 + rng() % (p - 3);
    basis.points.push_back(std::move(point));
  }
  return basis;
}

void EvalBasis::append(const EvalBasis &other) {
  primes.insert(primes.end(), other.primes.begin(), other.primes.end());
  points.insert(points.end(), other.points.begin(), other.points.end());
}

bool Fingerprint::is_zero() const {
  return std::all_of(values.begin(), values.end(),
                     [](std::uint64_t v) { return v == 0; });
}

Fingerprint fingerprint(const Slp &program, const EvalBasis &basis,
                        std::uint64_t seed) {
  Fingerprint fp{{}, seed};
  fp.values.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    fp.values.push_back(evaluate_mod(program, basis.points[k], basis.primes[k]));
  return fp;
}

Fingerprint fingerprint(const SparsePoly &poly, const EvalBasis &basis,
                        std::uint64_t seed) {
  Fingerprint fp{{}, seed};
  fp.values.reserve(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    fp.values.push_back(poly.evaluate_mod(basis.points[k], basis.primes[k]));
  return fp;
}

std::size_t ResidueHash::operator()(const std::vector<std::uint64_t> &v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (std::uint64_t x : v) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

}  // namespace tauforge
