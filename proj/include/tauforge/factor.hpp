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

#ifndef TAUFORGE_FACTOR_HPP
#define TAUFORGE_FACTOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace tauforge {

struct PrimePower {
  mpz_class prime;
  unsigned exponent;
};

/// Prime factorization of |n| (n != 0), primes ascending. Trial division runs
/// up to `trial_budget`; the remaining cofactor is split with Brent's
/// variant of Pollard rho. Throws FactorizationTooHard when rho gives up.
std::vector<PrimePower> factorize(const mpz_class &n, std::uint64_t trial_budget);

/// All positive divisors of |n|, ascending.
std::vector<mpz_class> positive_divisors(const mpz_class &n,
                                         std::uint64_t trial_budget);

}  // namespace tauforge

#endif  // TAUFORGE_FACTOR_HPP
