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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qperm {

enum class ErrorCode {
  MismatchedModulus,
  DivisionByZero,
  CapExceeded,
  NotPrimePower,
  TwoPowerExcluded,
  DegreeTooLow,
  SingularSystem,
  NegativeEntries,
  ShiftNotSupported,
  ZeroPermanent,
  InvariantViolation,
  PromiseViolated,
  DecodingFailure,
  AllFailed,
  QuadratureNonConvergence,
  InvalidArgument,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

// True for codes that signal a broken promise or invariant rather than bad
// input. The CLI maps these to exit status 3.
bool is_promise_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool cond, ErrorCode code, const std::string& message) {
  if (!cond) fail(code, message);
}

}  // namespace qperm
