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

#ifndef TAUFORGE_MACHINE_HPP
#define TAUFORGE_MACHINE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "tauforge/slp.hpp"

namespace tauforge {

using NodeId = std::int64_t;

/// register <- value, where `value` is an Slp over all registers: variable
/// x_{j+1} reads register j and the only literal is 1.
struct Assignment {
  std::size_t reg;
  Slp value;
  friend bool operator==(const Assignment &, const Assignment &) = default;
};

/// Assignments of one node happen simultaneously, all reading the old
/// register file.
struct ComputeNode {
  std::vector<Assignment> assignments;
  NodeId next;
  friend bool operator==(const ComputeNode &, const ComputeNode &) = default;
};

/// Takes `yes` iff `test` evaluates to exactly zero.
struct BranchNode {
  Slp test;
  NodeId yes;
  NodeId no;
  friend bool operator==(const BranchNode &, const BranchNode &) = default;
};

struct OutputNode {
  std::size_t reg;
  friend bool operator==(const OutputNode &, const OutputNode &) = default;
};

struct Node {
  NodeId id;
  std::variant<ComputeNode, BranchNode, OutputNode> kind;
  friend bool operator==(const Node &, const Node &) = default;
};

/// Unvalidated machine as read from a file or built in code.
///
/// Register layout at start: registers [0, input_arity) hold the input,
/// the next guess_arity registers hold the guess, everything else is 0.
struct MachineDescription {
  std::string name;
  std::size_t input_arity = 0;
  std::size_t guess_arity = 0;
  std::size_t registers = 0;
  NodeId start = 0;
  std::vector<Node> nodes;
  friend bool operator==(const MachineDescription &, const MachineDescription &) = default;
};

/// A constant-free machine whose node graph has passed validation. Immutable.
class Machine {
 public:
  const MachineDescription &description() const noexcept { return desc_; }
  const std::string &name() const noexcept { return desc_.name; }
  std::size_t input_arity() const noexcept { return desc_.input_arity; }
  std::size_t guess_arity() const noexcept { return desc_.guess_arity; }
  /// input_arity + guess_arity: the length of the initial data vector.
  std::size_t data_arity() const noexcept { return desc_.input_arity + desc_.guess_arity; }
  std::size_t registers() const noexcept { return desc_.registers; }
  NodeId start() const noexcept { return desc_.start; }
  const std::vector<Node> &nodes() const noexcept { return desc_.nodes; }

  std::size_t index_of(NodeId id) const { return index_.at(id); }
  const Node &node(NodeId id) const { return desc_.nodes[index_of(id)]; }

  /// Non-fatal findings, e.g. NONBINARY_OUTPUT_WARNING.
  const std::vector<std::string> &warnings() const noexcept { return warnings_; }

 private:
  friend Machine validate_machine(MachineDescription);
  MachineDescription desc_;
  std::unordered_map<NodeId, std::size_t> index_;
  std::vector<std::string> warnings_;
};

/// Throws DanglingNode, BadRegister, DuplicateNode or NoOutput. An output
/// register that cannot be shown to hold only 0 or 1 yields a warning.
Machine validate_machine(MachineDescription description);

struct BranchEvent {
  NodeId node;
  mpq_class value;
  bool taken_yes;
};

enum class RunStatus { Halted, StepCapExceeded };

struct Trace {
  std::vector<NodeId> path;
  std::size_t steps = 0;
  RunStatus status = RunStatus::StepCapExceeded;
  std::optional<mpq_class> output;
  std::vector<BranchEvent> branch_events;
  /// Register file on entry to each node of `path`.
  std::vector<std::vector<mpq_class>> states;

  bool accepted() const { return output && *output == 0; }
};

/// Exact rational execution. Never throws for a capped run: the Trace comes
/// back with status StepCapExceeded and no output. Throws LengthMismatch if
/// the input or guess has the wrong length.
Trace run_concrete(const Machine &machine, std::span<const mpq_class> input,
                   std::span<const mpq_class> guess, std::size_t step_cap);

// --- Builtin machines -------------------------------------------------------

struct HnSystem;

/// Decides x in {1, ..., m} with m sequential equality tests; m <= 2^16.
Machine membership_machine(unsigned m);

/// Input x, guess bits g_0..g_{k-1}; accepts iff x != 0, x = sum g_i 2^i
/// and each g_i (g_i - 1) = 0, i.e. x in {1, ..., 2^k - 1}. Tests run in
/// that order. k <= 16.
Machine example2_verifier(unsigned bits);

/// Guess is a point; accepts iff every polynomial of the system vanishes.
Machine hn_verifier(const HnSystem &system);

/// Looks up a builtin by name: "membership" (param m), "example2" (param k).
Machine builtin_machine(const std::string &name, unsigned param);

/// A constant-free program for `poly` (integer coefficients built from 1).
Slp polynomial_to_slp(const SparsePoly &poly);

}  // namespace tauforge

#endif  // TAUFORGE_MACHINE_HPP
