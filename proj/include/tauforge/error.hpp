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

#ifndef TAUFORGE_ERROR_HPP
#define TAUFORGE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tauforge {

enum class Errc {
  ForwardReference,
  ArityMismatch,
  TermCapExceeded,
  EmptyList,
  SyntaxError,
  ZeroPolynomial,
  FactorizationTooHard,
  CapExceeded,
  DanglingNode,
  BadRegister,
  NoOutput,
  DuplicateNode,
  StepCapExceeded,
  ZeroTestInconclusive,
  ParamOutOfRange,
  BadComponent,
  BuildOverflow,
  TraceRejects,
  LengthMismatch,
  DomainTooLarge,
  BadFormat,
};

std::string_view errc_name(Errc code);

/// Every domain failure in the library surfaces as this exception. The code
/// is stable and is what tests and the CLI switch on; the message is free
/// text.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string &what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tauforge

#endif  // TAUFORGE_ERROR_HPP
