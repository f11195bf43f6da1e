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

#ifndef TAUFORGE_SYMBOLIC_HPP
#define TAUFORGE_SYMBOLIC_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tauforge/fingerprint.hpp"
#include "tauforge/machine.hpp"

namespace tauforge {

/// An irreducible piece of a problem's instance space, given as the image
/// of psi: C^t -> C^s, plus sample points labeled by the problem.
struct ComponentSpec {
  std::string name;
  std::size_t ambient_size = 0;     // s
  std::size_t parameter_arity = 0;  // t
  std::vector<Slp> psi;             // s programs of arity t
  std::vector<std::vector<mpq_class>> yes_samples;
  std::vector<std::vector<mpq_class>> no_samples;

  friend bool operator==(const ComponentSpec &, const ComponentSpec &) = default;
};

/// Throws BadComponent on a shape error or a point labeled both ways.
void check_component(const ComponentSpec &component);

/// psi = identity on C^s.
ComponentSpec full_space_component(std::string name, std::size_t s);

struct BranchRecord {
  NodeId node;
  /// The test as a program in the machine's data variables.
  Slp test;
  /// Identically zero on the component, so the yes-branch was followed.
  bool trivial;
};

struct CanonicalTrace {
  std::vector<NodeId> path;
  std::vector<BranchRecord> branch_records;
  /// Product of the non-trivial tests; nullopt stands for the constant ONE.
  std::optional<Slp> f;
  /// Arithmetic operations plus branches executed along the path.
  std::size_t symbolic_steps = 0;

  bool is_one() const noexcept { return !f.has_value(); }
  /// length(f), with ONE counted as 0 extra instructions.
  std::size_t f_length() const noexcept { return f ? f->length() : 0; }
  /// f at a point of C^s; ONE evaluates to 1 everywhere.
  mpq_class evaluate_f(std::span<const mpq_class> point) const;
};

struct SymbolicOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t fingerprint_pairs = kDefaultFingerprintPairs;
  /// Expansions confirming a zero test stay within this many monomials.
  std::size_t term_cap = 1u << 12;
  /// Throw ZeroTestInconclusive rather than trust a fingerprint alone.
  bool strict = false;
};

/// Follows the generic point of `component` through the machine. Tests that
/// vanish identically on the component take yes and are trivial; all
/// others take no. Throws StepCapExceeded, ZeroTestInconclusive, or
/// ArityMismatch when s differs from the machine's data arity.
CanonicalTrace run_symbolic(const Machine &machine, const ComponentSpec &component,
                            std::size_t step_cap, const SymbolicOptions &options = {});

}  // namespace tauforge

#endif  // TAUFORGE_SYMBOLIC_HPP
