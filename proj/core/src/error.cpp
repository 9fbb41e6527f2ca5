// Copyright 2026 The qperm Authors
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

#include "qperm/error.hpp"

namespace qperm {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MismatchedModulus: return "MismatchedModulus";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::TwoPowerExcluded: return "TwoPowerExcluded";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NegativeEntries: return "NegativeEntries";
    case ErrorCode::ShiftNotSupported: return "ShiftNotSupported";
    case ErrorCode::ZeroPermanent: return "ZeroPermanent";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::PromiseViolated: return "PromiseViolated";
    case ErrorCode::DecodingFailure: return "DecodingFailure";
    case ErrorCode::AllFailed: return "AllFailed";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_promise_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvariantViolation:
    case ErrorCode::PromiseViolated:
    case ErrorCode::DecodingFailure:
    case ErrorCode::AllFailed:
    case ErrorCode::QuadratureNonConvergence:
      return true;
    default:
      return false;
  }
}

}  // namespace qperm
