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

#ifndef TAUFORGE_MODULAR_HPP
#define TAUFORGE_MODULAR_HPP

#include <cstdint>

#include <gmpxx.h>

namespace tauforge {

// Word-size modular arithmetic; operands are assumed already reduced.

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return (s >= p || s < a) ? s - p : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p);

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// Residue of an arbitrary-precision integer or rational. Rationals whose
/// denominator vanishes mod p have no residue; `ok` reports that.
std::uint64_t reduce_mod(const mpz_class &v, std::uint64_t p);
std::uint64_t reduce_mod(const mpq_class &v, std::uint64_t p, bool &ok);

}  // namespace tauforge

#endif  // TAUFORGE_MODULAR_HPP
