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

#include "tauforge/factor.hpp"

#include <algorithm>
#include <map>

#include "tauforge/error.hpp"

namespace tauforge {
namespace {

constexpr unsigned long kRhoMaxIterations = 1ul << 20;
constexpr unsigned kRhoMaxRestarts = 8;

bool probably_prime(const mpz_class &n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

// Brent's cycle finding with batched gcds. Returns a nontrivial factor or
// 0 when the iteration budget runs out.
mpz_class brent_rho(const mpz_class &n, unsigned long c_seed) {
  if (mpz_even_p(n.get_mpz_t()))
    return 2;
  mpz_class c = c_seed;
  mpz_class y = 2, x, ys, q = 1, g = 1, t;
  unsigned long r = 1;
  constexpr unsigned long m = 128;
  unsigned long iterations = 0;
  auto step = [&](mpz_class &v) {
    v = v * v + c;
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i)
      step(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long lim = std::min(m, r - k);
      for (unsigned long i = 0; i < lim; ++i) {
        step(y);
        t = x - y;
        q = q * abs(t);
        mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
      iterations += lim;
      if (iterations > kRhoMaxIterations)
        return 0;
    }
    r *= 2;
  }
  if (g == n) {
    // Batched gcd overshot; backtrack one step at a time.
    do {
      step(ys);
      t = x - ys;
      mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? mpz_class(0) : g;
}

void split(const mpz_class &n, std::map<mpz_class, unsigned> &out) {
  if (n == 1)
    return;
  if (probably_prime(n)) {
    ++out[n];
    return;
  }
  mpz_class root;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    split(root, out);
    split(root, out);
    return;
  }
  for (unsigned attempt = 0; attempt < kRhoMaxRestarts; ++attempt) {
    mpz_class d = brent_rho(n, 1 + attempt);
    if (d != 0 && d != 1 && d != n) {
      split(d, out);
      split(n / d, out);
      return;
    }
  }
  throw Error(Errc::FactorizationTooHard,
              "could not split " + n.get_str() + " within the rho budget");
}

}  // namespace

std::vector<PrimePower> factorize(const mpz_class &n, std::uint64_t trial_budget) {
  if (n == 0)
    throw Error(Errc::ZeroPolynomial, "cannot factor 0");
  mpz_class rest = abs(n);
  std::map<mpz_class, unsigned> found;
  auto strip = [&](unsigned long d) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
      ++found[mpz_class(d)];
    }
  };
  strip(2);
  for (std::uint64_t d = 3; d <= trial_budget; d += 2) {
    if (rest == 1)
      break;
    if (mpz_cmp_ui(rest.get_mpz_t(), d * d) < 0) {
      // Whatever is left is prime.
      ++found[rest];
      rest = 1;
      break;
    }
    strip(d);
  }
  split(rest, found);
  std::vector<PrimePower> out;
  out.reserve(found.size());
  for (auto &[p, e] : found)
    out.push_back({p, e});
  return out;
}

std::vector<mpz_class> positive_divisors(const mpz_class &n,
                                         std::uint64_t trial_budget) {
  std::vector<mpz_class> divisors{1};
  for (const PrimePower &pp : factorize(n, trial_budget)) {
    std::size_t base = divisors.size();
    mpz_class power = 1;
    for (unsigned e = 1; e <= pp.exponent; ++e) {
      power *= pp.prime;
      for (std::size_t i = 0; i < base; ++i)
        divisors.push_back(divisors[i] * power);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

}  // namespace tauforge
