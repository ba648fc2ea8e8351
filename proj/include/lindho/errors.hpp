// Copyright 2026 The lindho Authors
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

namespace lindho {

/// Failure categories shared by every module. The numeric values are part of
/// the C API (see lindho.h) and must not be reordered.
enum class ErrorCode : int {
    kInvalidInput = 1,
    kConstraintViolation = 2,
    kInvalidRegime = 3,
    kDegenerateInput = 4,
    kDegenerateRegime = 5,
    kNoStationaryState = 6,
    kUnsupportedRegime = 7,
    kPRepresentationUnavailable = 8,
    kGenFunctionDiverged = 9,
    kSingularInitialCondition = 10,
    kTruncationBreach = 11,
    kConfigError = 12,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace lindho
