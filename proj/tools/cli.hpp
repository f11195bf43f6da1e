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

#ifndef TAUFORGE_TOOLS_CLI_HPP
#define TAUFORGE_TOOLS_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "tauforge/enumerate.hpp"
#include "tauforge/fingerprint.hpp"
#include "tauforge/hn.hpp"
#include "tauforge/io.hpp"

namespace tauforge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

struct Caps {
  std::size_t max_len = kDefaultLengthCap;
  std::size_t term_cap = 1u << 16;
  std::size_t step_cap = 1u << 20;
  std::uint64_t factor_budget = 1u << 16;
  std::uint64_t domain_cap = kDomainCap;
};

enum class Format { Csv, Json };

struct RunConfig {
  std::uint64_t seed = kDefaultSeed;
  Caps caps;
  std::size_t workers = 1;
  std::string output;  // empty: standard output
  Format format = Format::Json;
};

/// The part of the config that determines report contents. Worker count and
/// output path are left out so reports compare byte for byte across them.
io::Json config_to_json(const RunConfig &config);

/// Runs one command line. Reports go to `out` (or the --output file),
/// diagnostics to `err`. Returns kExitOk, kExitDomain or kExitUsage.
int dispatch(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace tauforge::cli

#endif  // TAUFORGE_TOOLS_CLI_HPP
