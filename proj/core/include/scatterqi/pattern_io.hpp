// Copyright 2026 The scatterqi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SCATTERQI_PATTERN_IO_HPP
#define SCATTERQI_PATTERN_IO_HPP

#include <iosfwd>
#include <string>

#include "scatterqi/circuit.hpp"
#include "scatterqi/shaping.hpp"

namespace scatterqi {

// Header `segment,channel,phase_rad`, one row per segment, phases with 17
// significant digits.
std::string pattern_csv(const PhasePattern& pattern);
PhasePattern parse_pattern_csv(std::istream& in, InputMode mode);

// Header
// `t_mk_re,t_mk_im,t_ml_re,t_ml_im,t_nk_re,t_nk_im,t_nl_re,t_nl_im,alpha_set,alpha_fit,t_fit,sigma_max`
// and a single data row.
std::string circuit_csv(const ProgrammedCircuit& circuit);

}  // namespace scatterqi

#endif  // SCATTERQI_PATTERN_IO_HPP
