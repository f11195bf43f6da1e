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

#include "tauforge/error.hpp"

namespace tauforge {

std::string_view errc_name(Errc code) {
  switch (code) {
  case Errc::ForwardReference: return "FORWARD_REFERENCE";
  case Errc::ArityMismatch: return "ARITY_MISMATCH";
  case Errc::TermCapExceeded: return "TERM_CAP_EXCEEDED";
  case Errc::EmptyList: return "EMPTY_LIST";
  case Errc::SyntaxError: return "SYNTAX_ERROR";
  case Errc::ZeroPolynomial: return "ZERO_POLYNOMIAL";
  case Errc::FactorizationTooHard: return "FACTORIZATION_TOO_HARD";
  case Errc::CapExceeded: return "CAP_EXCEEDED";
  case Errc::DanglingNode: return "DANGLING_NODE";
  case Errc::BadRegister: return "BAD_REGISTER";
  case Errc::NoOutput: return "NO_OUTPUT";
  case Errc::DuplicateNode: return "DUPLICATE_NODE";
  case Errc::StepCapExceeded: return "STEP_CAP_EXCEEDED";
  case Errc::ZeroTestInconclusive: return "ZERO_TEST_INCONCLUSIVE";
  case Errc::ParamOutOfRange: return "PARAM_OUT_OF_RANGE";
  case Errc::BadComponent: return "BAD_COMPONENT";
  case Errc::BuildOverflow: return "BUILD_OVERFLOW";
  case Errc::TraceRejects: return "TRACE_REJECTS";
  case Errc::LengthMismatch: return "LENGTH_MISMATCH";
  case Errc::DomainTooLarge: return "DOMAIN_TOO_LARGE";
  case Errc::BadFormat: return "BAD_FORMAT";
  }
  return "UNKNOWN";
}

}  // namespace tauforge
