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

#ifndef TAUFORGE_HN_HPP
#define TAUFORGE_HN_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tauforge/machine.hpp"
#include "tauforge/polynomial.hpp"

namespace tauforge {

/// A list (m, n, f_1, ..., f_m) of polynomials in n variables; m is the
/// number of polynomials.
struct HnSystem {
  std::size_t n = 0;
  std::vector<SparsePoly> polys;

  std::size_t m() const noexcept { return polys.size(); }
  friend bool operator==(const HnSystem &, const HnSystem &) = default;
};

/// Throws ArityMismatch unless every polynomial has arity n.
void check_system(const HnSystem &system);

/// Bit length with bits(0) = 1: a zero still occupies one digit.
std::uint64_t bit_size(std::uint64_t value);

/// Size under the list-of-lists encoding: integers (m, n, monomial counts,
/// exponents) in bits, each coefficient as one unit.
struct SizeReport {
  std::uint64_t header_bits = 0;       // bits(m) + bits(n)
  std::uint64_t count_bits = 0;        // bits(S) per polynomial
  std::uint64_t exponent_bits = 0;     // bits(I_j) per monomial and variable
  std::uint64_t coefficient_units = 0; // one per monomial
  std::uint64_t total = 0;
};

SizeReport encode_size(const HnSystem &system);

/// True iff every polynomial vanishes at `point`. Throws LengthMismatch.
bool verify_solution(const HnSystem &system, std::span<const mpq_class> point);

// --- Register equations -------------------------------------------------------

/// Where each unknown of the encoding lives in the system's variable list.
/// Times run 0..T-1; the state at time t is the one on entry to the t-th
/// node of the (padded) path.
class RegisterLayout {
 public:
  RegisterLayout(std::size_t guesses, std::size_t registers, std::size_t nodes,
                 std::size_t time);

  std::size_t guess(std::size_t i) const { return i; }
  std::size_t reg(std::size_t t, std::size_t j) const;
  std::size_t selector(std::size_t t, std::size_t q) const;
  std::size_t node_index(std::size_t t) const;
  /// Inverse witness for a no-branch taken at time t < T - 1.
  std::size_t inverse(std::size_t t) const;
  std::size_t variable_count() const noexcept { return total_; }
  std::size_t time() const noexcept { return time_; }
  std::string variable_name(std::size_t v) const;

 private:
  std::size_t guesses_, registers_, nodes_, time_;
  std::size_t reg_base_, sel_base_, nu_base_, w_base_, total_;
};

struct ReductionOptions {
  /// Cap on the total number of monomials in the emitted system.
  std::size_t max_terms = 1u << 22;
  /// Cap for expanding individual node programs.
  std::size_t term_cap = 1u << 16;
};

/// The register equations of a machine for time bound T, parameterised by
/// the input. system(x) is solvable over C iff some guess makes the machine
/// accept x in at most T steps.
class RegisterEquations {
 public:
  /// Throws ParamOutOfRange for T = 0 and BuildOverflow over the cap.
  RegisterEquations(const Machine &machine, std::size_t time,
                    ReductionOptions options = {});

  const RegisterLayout &layout() const noexcept { return layout_; }
  const Machine &machine() const noexcept { return *machine_; }

  /// Throws LengthMismatch on a wrong input length.
  HnSystem system(std::span<const mpq_class> input) const;

 private:
  const Machine *machine_;
  RegisterLayout layout_;
  ReductionOptions options_;
  /// Every equation except the input initialisation, which depends on x.
  std::vector<SparsePoly> fixed_;
};

/// Reads the variable assignment off an accepting run. Throws TraceRejects
/// when the run does not accept within T steps.
std::vector<mpq_class> trace_to_solution(const RegisterEquations &equations,
                                         std::span<const mpq_class> input,
                                         std::span<const mpq_class> guess);

/// M's equations, M's output forced to 0, then N's equations over a fresh
/// block with the same input. Both machines must share input arity.
HnSystem combined_register_equations(const RegisterEquations &m,
                                     const RegisterEquations &n,
                                     std::span<const mpq_class> input);

// --- Finite-domain solving ------------------------------------------------

using Domains = std::vector<std::vector<mpq_class>>;

inline constexpr std::uint64_t kDomainCap = 10'000'000;

/// Exhaustive search over the Cartesian product of `domains`, in mixed-radix
/// order with the last variable fastest. The first verified point wins, no
/// matter how many workers share the search. Throws DomainTooLarge or
/// LengthMismatch.
std::optional<std::vector<mpq_class>> brute_force_solvable(
    const HnSystem &system, const Domains &domains, std::size_t workers = 1,
    std::uint64_t domain_cap = kDomainCap);

/// Narrows domains by repeatedly solving equations that are linear in their
/// single remaining unknown. Variables fixed in `seed` start as singletons;
/// variables never pinned get the default domain {0}.
Domains propagate_domains(const HnSystem &system,
                          std::span<const std::optional<mpq_class>> seed);

/// Satisfiability of a register-equation system where the guess block
/// ranges over `guess_domains` and every other variable over the domains
/// propagated from each guess.
std::optional<std::vector<mpq_class>> solve_with_guess_domains(
    const HnSystem &system, const RegisterLayout &layout,
    const Domains &guess_domains, std::uint64_t domain_cap = kDomainCap);

}  // namespace tauforge

#endif  // TAUFORGE_HN_HPP
