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

#include <string>
#include <string_view>

#include "lindho/params.hpp"

namespace lindho {

enum class ParamSource { kDirect, kThermal, kMicro };

/// Parameter document as parsed, before any physics checks.
///
/// Direct form:  {"hbar", "mass", "omega", "lambda", "mu", "d_pp", "d_qq", "d_pq"}
/// Thermal form: {"hbar", "mass", "omega", "lambda", "mu", "thermal": {"kT"}}
/// Micro form:   {"hbar", "mass", "omega", "mu",
///                "micro": {"a1": [re, im], "b1": ..., "a2": ..., "b2": ...}}
/// hbar and mass default to 1; absent micro amplitudes default to 0.
struct ParamsConfig {
    ParamSource source = ParamSource::kDirect;
    ParamValues values;  // diffusion entries are filled by resolve()
    double kT = 0.0;
    LindbladMicroParams micro;
};

/// Throws kConfigError for malformed JSON, unknown or missing keys, wrong
/// types, or more than one parameter source.
ParamsConfig parse_params_config(std::string_view json_text);

/// Reads a file and parses it; kConfigError if it cannot be read.
ParamsConfig load_params_config(const std::string& path);

/// Fills the diffusion coefficients (and lambda for the micro form) without
/// checking the constraints. Physics errors from the thermal and micro
/// routes propagate.
ParamValues resolve(const ParamsConfig& config);

std::string_view source_name(ParamSource source) noexcept;

}  // namespace lindho
