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

#ifndef SCATTERQI_CONFIG_HPP
#define SCATTERQI_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "scatterqi/medium.hpp"
#include "scatterqi/output.hpp"
#include "scatterqi/shaping.hpp"
#include "scatterqi/source.hpp"

namespace scatterqi {

enum class CircuitSource { Ideal, Programmed };
enum class SimulationMode { Analytic, MonteCarlo };

struct ScenarioConfig {
  std::uint64_t seed = 0;

  EnsembleKind medium_kind = EnsembleKind::Gaussian;
  // Unset n_out: 4000 for the Gaussian ensemble, n_in for the unitary one.
  std::optional<std::size_t> n_out;
  // Unset n_in: two modes' worth of segments.
  std::optional<std::size_t> n_in;
  // Load the medium from a matrix container instead of generating it.
  std::string medium_file;

  std::size_t segments = 960;
  std::size_t output_m = 0;
  std::size_t output_n = 1;
  OptimizeMethod method = OptimizeMethod::analytic();
  int calibration_rounds = 8;
  double alpha = 3.141592653589793;

  std::string source_preset = "ideal";
  std::optional<double> overlap;
  std::optional<double> bandwidth_nm;
  std::optional<double> mean_pairs;
  double efficiency_m = 1.0;
  double efficiency_n = 1.0;

  // Default: 9 points on [0, pi].
  std::vector<double> alpha_grid;
  // Empty: chosen from the source bandwidths.
  std::vector<double> delay_grid;
  std::vector<double> hom_alphas;
  SimulationMode mode = SimulationMode::Analytic;
  CircuitSource circuit = CircuitSource::Programmed;
  double ideal_t = 0.5;
  std::uint64_t pulses = 1000000;
  std::size_t scan_points = 64;

  std::vector<std::size_t> enhancement_segments{64, 256, 960};
  std::size_t trials = 20;

  ScenarioConfig();

  std::size_t effective_n_in() const;
  std::size_t effective_n_out() const;
  PhotonPairSource source() const;

  // Throws InvalidArgument on inconsistent settings.
  void validate() const;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// `key = value` lines, `#` starts a comment, `[section]` headers group keys.
// Keys may also appear before any section header. Unknown keys and sections
// are errors.
ScenarioConfig parse_config(std::string_view text);

// Literal radians or multiples of pi: `pi`, `-pi/2`, `3pi/4`, `0.5*pi`, `1.25`.
double parse_angle(std::string_view text);

// `start:stop:count` (inclusive, uniform) or a comma-separated list. With
// `angles` the elements go through parse_angle.
std::vector<double> parse_grid(std::string_view text, bool angles);

// Effective configuration as key=value pairs (numbers with 17 significant
// digits), in a fixed order.
Manifest config_manifest(const ScenarioConfig& config);

}  // namespace scatterqi

#endif  // SCATTERQI_CONFIG_HPP
