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

#ifndef SCATTERQI_SHAPING_HPP
#define SCATTERQI_SHAPING_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "scatterqi/circuit.hpp"
#include "scatterqi/medium.hpp"

namespace scatterqi {

enum class InputMode { K, L };

const char* to_string(InputMode mode);

// Phase-only modulator settings for one input mode. Segment s drives medium
// input channel segment_to_channel[s] with phase phases[s] in [0, 2 pi).
struct PhasePattern {
  std::vector<double> phases;
  InputMode input_mode = InputMode::K;
  std::vector<std::size_t> segment_to_channel;

  std::size_t segments() const { return phases.size(); }
};

// Flat (all-zero) pattern on the contiguous block of channels for `mode`:
// K drives [0, segments), L drives [segments, 2 * segments).
PhasePattern pattern_template(InputMode mode, std::size_t segments);

// Throws InvalidArgument unless phases lie in [0, 2 pi), the mapping has one
// entry per segment and is injective.
void validate(const PhasePattern& pattern);

struct OptimizeMethod {
  enum class Kind { Analytic, SteppedPhase };

  Kind kind = Kind::Analytic;
  // SteppedPhase only: probe phases per segment and sweeps over all segments.
  int steps = 8;
  int passes = 2;

  static OptimizeMethod analytic() { return {}; }
  static OptimizeMethod stepped(int steps = 8, int passes = 2) {
    return {Kind::SteppedPhase, steps, passes};
  }
};

// Maximizes intensity at `target_output` by choosing one phase per segment.
//
// Analytic: phase_s = -arg T(target, channel_s), shifted so segment 0 is at 0.
// SteppedPhase: sequential sweeps; each segment is probed at `steps` equally
// spaced phases against the current field of all other segments, a sinusoid
// is fitted to the probe intensities and the segment is set to the maximum.
// The same segment-0 normalization is applied afterwards.
PhasePattern optimize_pattern(const TransmissionMatrix& matrix, const PhasePattern& input_mode,
                              std::size_t target_output,
                              const OptimizeMethod& method = OptimizeMethod::analytic());

// Phase-only superposition of two optimized patterns per input mode:
//   k: arg(exp(i phi_km) + w_k exp(i phi_kn))
//   l: arg(exp(i phi_lm) + w_l exp(i (phi_ln + alpha)))
// Anti-phase segments (phasor sum zero) take phi_km, respectively phi_lm.
// The weights (default 1) shift power between the m and n foci of a mode.
std::pair<PhasePattern, PhasePattern> combine_patterns(const PhasePattern& p_km,
                                                       const PhasePattern& p_kn,
                                                       const PhasePattern& p_lm,
                                                       const PhasePattern& p_ln, double alpha,
                                                       double weight_k = 1.0,
                                                       double weight_l = 1.0);

// Input vector (length n_in) carrying unit power spread evenly over the
// pattern's segments.
FieldVector input_field(const TransmissionMatrix& matrix, const PhasePattern& pattern);

// Field at one output for the unit-power input of `pattern`.
Complex output_field(const TransmissionMatrix& matrix, const PhasePattern& pattern,
                     std::size_t output);

ProgrammedCircuit effective_circuit(const TransmissionMatrix& matrix,
                                    const PhasePattern& pattern_k,
                                    const PhasePattern& pattern_l, std::size_t m,
                                    std::size_t n, double alpha_set);

struct ClassicalScan {
  std::vector<double> delta_theta;
  std::vector<double> intensity_m;
  std::vector<double> intensity_n;
};

enum class ScanInputs { Both, KOnly, LOnly };

// Coherent unit-power fields in k and l with relative phase delta_theta
// (applied to l); records |E_m|^2 and |E_n|^2.
ClassicalScan classical_scan(const TransmissionMatrix& matrix, const PhasePattern& pattern_k,
                             const PhasePattern& pattern_l, std::size_t m, std::size_t n,
                             std::span<const double> grid, ScanInputs inputs = ScanInputs::Both);

// Uniform grid of `points` phases on [0, 2 pi).
std::vector<double> phase_grid(std::size_t points);

// Fitted phase of the n-curve minus that of the m-curve, in (-pi, pi]. For the
// ideal circuit form this is the programmed alpha.
double measured_relative_phase(const ClassicalScan& scan);

struct Enhancement {
  double target_before = 0.0;
  double target_after = 0.0;
  // Mean intensity over all outputs for the flat input.
  double background = 0.0;

  double factor() const { return target_after / background; }
};

Enhancement measure_enhancement(const TransmissionMatrix& matrix, const PhasePattern& flat,
                                const PhasePattern& optimized, std::size_t target);

// Ideal mean enhancement of phase-only focusing with N segments.
double predicted_enhancement(std::size_t segments);

struct PatternSet {
  PhasePattern km, kn, lm, ln;
};

PatternSet optimize_pattern_set(const TransmissionMatrix& matrix, std::size_t segments,
                                std::size_t m, std::size_t n,
                                const OptimizeMethod& method = OptimizeMethod::analytic());

struct ProgrammedPatterns {
  PhasePattern k;
  PhasePattern l;
  ProgrammedCircuit circuit;
  // Arguments actually handed to combine_patterns.
  double alpha_command = 0.0;
  double weight_k = 1.0;
  double weight_l = 1.0;
  // Global phase added to the k->n pattern before combining.
  double kn_offset = 0.0;
};

// Combines the four patterns for target phase `alpha`. The optimized
// patterns each carry an unknown output phase, so the raw combination
// realizes alpha plus an offset, and the four foci differ in strength.
// With calibration_rounds > 0, classical measurements steer the combination:
// each mode's weight until single-input intensities show it splitting evenly
// over m and n, and the commanded phase until the fitted relative phase of a
// two-input scan equals alpha. Phase and l weight interact and are refined in
// alternation, and if that fails to converge the global phase of the k->n
// pattern (a free gauge of the optimization) is shifted and the search
// repeated. The best combination seen is kept. With calibration_rounds = 0
// the raw unweighted combination is used.
ProgrammedPatterns program_circuit(const TransmissionMatrix& matrix, const PatternSet& set,
                                   std::size_t m, std::size_t n, double alpha,
                                   int calibration_rounds = 8);

}  // namespace scatterqi

#endif  // SCATTERQI_SHAPING_HPP
