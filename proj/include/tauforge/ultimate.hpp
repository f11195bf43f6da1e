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

#ifndef TAUFORGE_ULTIMATE_HPP
#define TAUFORGE_ULTIMATE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tauforge/machine.hpp"
#include "tauforge/symbolic.hpp"
#include "tauforge/tau_search.hpp"

namespace tauforge {

/// run_symbolic restricted to deterministic machines. Throws
/// ParamOutOfRange when the machine reads a guess.
CanonicalTrace branch_polynomial(const Machine &machine, const ComponentSpec &component,
                                 std::size_t step_cap, const SymbolicOptions &options = {});

enum class Side { YesInZeroSet, NoInZeroSet, Violated, Vacuous };

std::string_view side_name(Side side);

struct DichotomyReport {
  std::string component;
  Side side = Side::Vacuous;
  /// When VIOLATED: a yes-sample and a no-sample where f does not vanish.
  std::optional<std::vector<mpq_class>> yes_witness;
  std::optional<std::vector<mpq_class>> no_witness;
};

/// Which labeled side of the component lies in Z(f), judged on the samples
/// alone. An empty side is contained vacuously.
DichotomyReport dichotomy_check(const CanonicalTrace &trace, const ComponentSpec &component);

struct UltimateOptions {
  std::size_t step_cap = 1u << 20;
  SymbolicOptions symbolic;
  /// Exact tau is attempted for f of arity <= 2 with length(f) at most this.
  std::size_t exact_limit = 5;
  SearchConfig search;
  std::size_t workers = 1;
};

struct ComponentBound {
  std::string component;
  std::size_t size = 0;
  std::size_t f_length = 0;
  /// tau(f) when `exact`, otherwise length(f).
  std::size_t bound = 0;
  bool exact = false;

  friend bool operator==(const ComponentBound &, const ComponentBound &) = default;
};

struct UltimateReport {
  std::vector<ComponentBound> entries;
  /// size -> max bound over that size's components.
  std::map<std::size_t, std::size_t> u_bound;

  friend bool operator==(const UltimateReport &, const UltimateReport &) = default;
};

/// Per-component bounds keyed by ambient size, or by `size_label` when set.
UltimateReport ultimate_time_bound(const Machine &machine,
                                   std::span<const ComponentSpec> components,
                                   const UltimateOptions &options = {},
                                   std::optional<std::size_t> size_label = std::nullopt);

/// One machine with its components; `size` overrides the ambient size as
/// the report key, e.g. the bit size of a parameter.
struct MachineSetEntry {
  std::optional<std::size_t> size;
  Machine machine;
  std::vector<ComponentSpec> components;
};

/// Merges the reports of every entry; u_bound takes the max per size.
UltimateReport ultimate_over_set(std::span<const MachineSetEntry> entries,
                                 const UltimateOptions &options = {});

}  // namespace tauforge

#endif  // TAUFORGE_ULTIMATE_HPP
