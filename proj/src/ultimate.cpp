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

#include "tauforge/ultimate.hpp"

#include <algorithm>

#include "tauforge/parallel.hpp"

namespace tauforge {

CanonicalTrace branch_polynomial(const Machine &machine, const ComponentSpec &component,
                                 std::size_t step_cap, const SymbolicOptions &options) {
  if (machine.guess_arity() != 0)
    throw Error(Errc::ParamOutOfRange,
                "branch polynomials need a deterministic machine; '" + machine.name() +
                    "' reads " + std::to_string(machine.guess_arity()) + " guesses");
  return run_symbolic(machine, component, step_cap, options);
}

std::string_view side_name(Side side) {
  switch (side) {
  case Side::YesInZeroSet:
    return "YES_IN_ZERO_SET";
  case Side::NoInZeroSet:
    return "NO_IN_ZERO_SET";
  case Side::Violated:
    return "VIOLATED";
  case Side::Vacuous:
    return "VACUOUS";
  }
  return "?";
}

DichotomyReport dichotomy_check(const CanonicalTrace &trace, const ComponentSpec &component) {
  auto first_nonzero = [&](const std::vector<std::vector<mpq_class>> &samples)
      -> std::optional<std::vector<mpq_class>> {
    for (const auto &pt : samples)
      if (trace.evaluate_f(pt) != 0)
        return pt;
    return std::nullopt;
  };
  DichotomyReport r;
  r.component = component.name;
  auto yes_out = first_nonzero(component.yes_samples);
  auto no_out = first_nonzero(component.no_samples);
  if (!component.yes_samples.empty() && !yes_out)
    r.side = Side::YesInZeroSet;
  else if (!component.no_samples.empty() && !no_out)
    r.side = Side::NoInZeroSet;
  else if (component.yes_samples.empty() || component.no_samples.empty())
    r.side = Side::Vacuous;
  else {
    r.side = Side::Violated;
    r.yes_witness = std::move(yes_out);
    r.no_witness = std::move(no_out);
  }
  return r;
}

namespace {

ComponentBound bound_for(const Machine &machine, const ComponentSpec &component,
                         const UltimateOptions &options, std::size_t size) {
  CanonicalTrace trace = run_symbolic(machine, component, options.step_cap, options.symbolic);
  ComponentBound b{component.name, size, trace.f_length(), trace.f_length(), trace.is_one()};
  if (trace.is_one() || trace.f->arity() > 2 || trace.f->length() > options.exact_limit ||
      trace.f->length() > options.search.hard_cap)
    return b;
  SparsePoly target = expand_to_polynomial(*trace.f, options.search.term_cap);
  if (target.is_zero())
    return b;
  // f itself has length L, so a miss below L pins tau(f) = L.
  SearchConfig search = options.search;
  search.workers = 1;
  auto found = tau_exact(target, b.f_length - 1, search);
  b.bound = found ? found->tau : b.f_length;
  b.exact = true;
  return b;
}

}  // namespace

UltimateReport ultimate_time_bound(const Machine &machine,
                                   std::span<const ComponentSpec> components,
                                   const UltimateOptions &options,
                                   std::optional<std::size_t> size_label) {
  std::vector<ComponentBound> entries(components.size());
  parallel_for(components.size(), options.workers, [&](std::size_t i) {
    entries[i] = bound_for(machine, components[i], options,
                           size_label.value_or(components[i].ambient_size));
  });
  UltimateReport r;
  for (ComponentBound &e : entries) {
    auto [it, fresh] = r.u_bound.emplace(e.size, e.bound);
    if (!fresh)
      it->second = std::max(it->second, e.bound);
    r.entries.push_back(std::move(e));
  }
  return r;
}

UltimateReport ultimate_over_set(std::span<const MachineSetEntry> entries,
                                 const UltimateOptions &options) {
  UltimateReport r;
  for (const MachineSetEntry &e : entries) {
    UltimateReport part = ultimate_time_bound(e.machine, e.components, options, e.size);
    for (ComponentBound &b : part.entries)
      r.entries.push_back(std::move(b));
    for (const auto &[size, bound] : part.u_bound) {
      auto [it, fresh] = r.u_bound.emplace(size, bound);
      if (!fresh)
        it->second = std::max(it->second, bound);
    }
  }
  return r;
}

}  // namespace tauforge
