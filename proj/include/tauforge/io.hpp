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

#ifndef TAUFORGE_IO_HPP
#define TAUFORGE_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "tauforge/hn.hpp"
#include "tauforge/machine.hpp"
#include "tauforge/polynomial.hpp"
#include "tauforge/symbolic.hpp"
#include "tauforge/ultimate.hpp"

namespace tauforge::io {

/// Key order is insertion order, so emitted reports are stable byte for byte.
using Json = nlohmann::ordered_json;

// Every reader below throws Error(BadFormat) on malformed input, with the
// offending field in the message. Semantic checks (validation, component
// shape) stay with the owning module.

/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const mpq_class &value);
/// Accepts "p" or "p/q" with an optional sign; the result is canonical.
mpq_class parse_rational(std::string_view text);

/// {"arity": n, "terms": [{"exp": [..], "coef": "decimal"}]}
Json poly_to_json(const SparsePoly &poly);
SparsePoly poly_from_json(const Json &j);

/// {"name", "input_arity", "guess_arity", "registers", "start", "nodes"}.
/// Node kinds: "compute" {"assign": [{"reg", "value"}], "next"},
/// "branch" {"test", "yes", "no"}, "output" {"reg"}. Programs are SLP text.
Json machine_to_json(const MachineDescription &machine);
MachineDescription machine_from_json(const Json &j);

/// {"name", "ambient_size", "parameter_arity", "psi", "yes_samples",
/// "no_samples"}; runs check_component on read.
Json component_to_json(const ComponentSpec &component);
ComponentSpec component_from_json(const Json &j);

/// {"m", "n", "polys"}; m must equal the number of polynomials.
Json system_to_json(const HnSystem &system);
HnSystem system_from_json(const Json &j);

Json size_report_to_json(const SizeReport &report);

/// {"entries": [{"size"?, "machine" | "builtin": {"name", "param"},
/// "components"?}]}. A missing component list means the full data space.
std::vector<MachineSetEntry> machine_set_from_json(const Json &j);

Json ultimate_report_to_json(const UltimateReport &report);

Json parse_json(std::string_view text);
Json read_json_file(const std::string &path);
std::string read_text_file(const std::string &path);

}  // namespace tauforge::io

#endif  // TAUFORGE_IO_HPP
