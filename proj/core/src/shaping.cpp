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

#include "scatterqi/shaping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <unordered_set>

#include "scatterqi/angles.hpp"
#include "scatterqi/errors.hpp"
#include "scatterqi/sine_fit.hpp"

namespace scatterqi {

namespace {

void check_channels(const TransmissionMatrix& matrix, const PhasePattern& pattern) {
  for (std::size_t ch : pattern.segment_to_channel) {
    if (ch >= matrix.n_in()) {
      throw DimensionError("pattern channel " + std::to_string(ch) + " out of range (n_in = " +
                           std::to_string(matrix.n_in()) + ")");
    }
  }
}

void check_output(const TransmissionMatrix& matrix, std::size_t output) {
  if (output >= matrix.n_out()) {
    throw DimensionError("output channel " + std::to_string(output) +
                         " out of range (n_out = " + std::to_string(matrix.n_out()) + ")");
  }
}

// arg(e^{ia} + w e^{ib}). For w = 1 this is the bisector: exactly a when
// a == b, and a on anti-phase.
double phasor_sum_phase(double a, double b, double w) {
  const double d = wrap_signed(b - a);
  if (w == 1.0) {
    if (d == std::numbers::pi) return wrap_phase(a);
    return wrap_phase(a + 0.5 * d);
  }
  return wrap_phase(a + std::atan2(w * std::sin(d), 1.0 + w * std::cos(d)));
}

PhasePattern combine_pair(const PhasePattern& first, const PhasePattern& second,
                          double offset, double weight) {
  if (first.segment_to_channel != second.segment_to_channel ||
      first.input_mode != second.input_mode) {
    throw InvalidArgument("combine_patterns: patterns of one input mode must share the segment map");
  }
  validate(first);
  validate(second);
  PhasePattern out = first;
  for (std::size_t s = 0; s < out.phases.size(); ++s) {
    out.phases[s] = phasor_sum_phase(first.phases[s], second.phases[s] + offset, weight);
  }
  return out;
}

}  // namespace

const char* to_string(InputMode mode) { return mode == InputMode::K ? "k" : "l"; }

PhasePattern pattern_template(InputMode mode, std::size_t segments) {
  if (segments == 0) throw InvalidArgument("pattern needs at least one segment");
  PhasePattern p;
  p.input_mode = mode;
  p.phases.assign(segments, 0.0);
  p.segment_to_channel.resize(segments);
  const std::size_t base = mode == InputMode::K ? 0 : segments;
  for (std::size_t s = 0; s < segments; ++s) p.segment_to_channel[s] = base + s;
  return p;
}

void validate(const PhasePattern& pattern) {
  if (pattern.phases.empty()) throw InvalidArgument("pattern has no segments");
  if (pattern.phases.size() != pattern.segment_to_channel.size()) {
    throw InvalidArgument("pattern phase count differs from segment map size");
  }
  for (double phi : pattern.phases) {
    if (!(phi >= 0.0 && phi < kTwoPi)) {
      throw InvalidArgument("pattern phase outside [0, 2 pi)");
    }
  }
  std::unordered_set<std::size_t> seen;
  for (std::size_t ch : pattern.segment_to_channel) {
    if (!seen.insert(ch).second) {
      throw InvalidArgument("segment map is not injective (channel " + std::to_string(ch) + ")");
    }
  }
}

PhasePattern optimize_pattern(const TransmissionMatrix& matrix, const PhasePattern& input_mode,
                              std::size_t target_output, const OptimizeMethod& method) {
  validate(input_mode);
  check_channels(matrix, input_mode);
  check_output(matrix, target_output);

  PhasePattern out = input_mode;
  const std::size_t segs = out.segments();
  const auto row = matrix.entries().row(static_cast<Eigen::Index>(target_output));
  auto coupling = [&](std::size_t s) {
    return row(static_cast<Eigen::Index>(out.segment_to_channel[s]));
  };

  if (method.kind == OptimizeMethod::Kind::Analytic) {
    for (std::size_t s = 0; s < segs; ++s) out.phases[s] = -std::arg(coupling(s));
  } else {
    if (method.steps < 3) {
      throw InvalidArgument("stepped-phase optimization needs at least 3 steps");
    }
    if (method.passes < 1) throw InvalidArgument("stepped-phase optimization needs a pass");
    const double scale = 1.0 / std::sqrt(static_cast<double>(segs));
    std::vector<double> probe = phase_grid(static_cast<std::size_t>(method.steps));
    std::vector<double> intensity(probe.size());

    Complex field = 0.0;
    for (std::size_t s = 0; s < segs; ++s) field += coupling(s) * std::polar(scale, out.phases[s]);

    for (int pass = 0; pass < method.passes; ++pass) {
      for (std::size_t s = 0; s < segs; ++s) {
        const Complex own = coupling(s) * scale;
        const Complex rest = field - own * std::polar(1.0, out.phases[s]);
        for (std::size_t i = 0; i < probe.size(); ++i) {
          intensity[i] = std::norm(rest + own * std::polar(1.0, probe[i]));
        }
        const SineFit fit = fit_sine(probe, intensity);
        // A vanishing modulation leaves the segment where it was.
        if (fit.amplitude > 0.0) {
          out.phases[s] = wrap_phase(0.5 * std::numbers::pi - fit.phase);
        }
        field = rest + own * std::polar(1.0, out.phases[s]);
      }
    }
  }

  const double reference = out.phases[0];
  for (double& phi : out.phases) phi = wrap_phase(phi - reference);
  return out;
}

std::pair<PhasePattern, PhasePattern> combine_patterns(const PhasePattern& p_km,
                                                       const PhasePattern& p_kn,
                                                       const PhasePattern& p_lm,
                                                       const PhasePattern& p_ln, double alpha,
                                                       double weight_k, double weight_l) {
  for (double w : {weight_k, weight_l}) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("combine_patterns: weights must be positive and finite");
    }
  }
  return {combine_pair(p_km, p_kn, 0.0, weight_k), combine_pair(p_lm, p_ln, alpha, weight_l)};
}

FieldVector input_field(const TransmissionMatrix& matrix, const PhasePattern& pattern) {
  validate(pattern);
  check_channels(matrix, pattern);
  FieldVector v = FieldVector::Zero(static_cast<Eigen::Index>(matrix.n_in()));
  const double scale = 1.0 / std::sqrt(static_cast<double>(pattern.segments()));
  for (std::size_t s = 0; s < pattern.segments(); ++s) {
    v(static_cast<Eigen::Index>(pattern.segment_to_channel[s])) =
        std::polar(scale, pattern.phases[s]);
  }
  return v;
}

Complex output_field(const TransmissionMatrix& matrix, const PhasePattern& pattern,
                     std::size_t output) {
  validate(pattern);
  check_channels(matrix, pattern);
  check_output(matrix, output);
  const auto row = matrix.entries().row(static_cast<Eigen::Index>(output));
  const double scale = 1.0 / std::sqrt(static_cast<double>(pattern.segments()));
  Complex field = 0.0;
  for (std::size_t s = 0; s < pattern.segments(); ++s) {
    field += row(static_cast<Eigen::Index>(pattern.segment_to_channel[s])) *
             std::polar(scale, pattern.phases[s]);
  }
  return field;
}

ProgrammedCircuit effective_circuit(const TransmissionMatrix& matrix,
                                    const PhasePattern& pattern_k,
                                    const PhasePattern& pattern_l, std::size_t m,
                                    std::size_t n, double alpha_set) {
  if (m == n) throw InvalidArgument("effective_circuit: output modes m and n must differ");
  check_output(matrix, m);
  check_output(matrix, n);
  std::unordered_set<std::size_t> k_channels(pattern_k.segment_to_channel.begin(),
                                             pattern_k.segment_to_channel.end());
  for (std::size_t ch : pattern_l.segment_to_channel) {
    if (k_channels.count(ch)) {
      throw InvalidArgument("effective_circuit: input modes share channel " + std::to_string(ch));
    }
  }
  Eigen::Matrix2cd block;
  block(0, 0) = output_field(matrix, pattern_k, m);
  block(0, 1) = output_field(matrix, pattern_l, m);
  block(1, 0) = output_field(matrix, pattern_k, n);
  block(1, 1) = output_field(matrix, pattern_l, n);
  return circuit_from_block(block, alpha_set, m, n);
}

ClassicalScan classical_scan(const TransmissionMatrix& matrix, const PhasePattern& pattern_k,
                             const PhasePattern& pattern_l, std::size_t m, std::size_t n,
                             std::span<const double> grid, ScanInputs inputs) {
  if (grid.empty()) throw InvalidArgument("classical_scan: empty phase grid");
  const double use_k = inputs == ScanInputs::LOnly ? 0.0 : 1.0;
  const double use_l = inputs == ScanInputs::KOnly ? 0.0 : 1.0;
  const Complex mk = use_k * output_field(matrix, pattern_k, m);
  const Complex ml = use_l * output_field(matrix, pattern_l, m);
  const Complex nk = use_k * output_field(matrix, pattern_k, n);
  const Complex nl = use_l * output_field(matrix, pattern_l, n);

  ClassicalScan scan;
  scan.delta_theta.assign(grid.begin(), grid.end());
  scan.intensity_m.reserve(grid.size());
  scan.intensity_n.reserve(grid.size());
  for (double dtheta : grid) {
    const Complex shift = std::polar(1.0, dtheta);
    scan.intensity_m.push_back(std::norm(mk + ml * shift));
    scan.intensity_n.push_back(std::norm(nk + nl * shift));
  }
  return scan;
}

std::vector<double> phase_grid(std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(points);
  }
  return grid;
}

double measured_relative_phase(const ClassicalScan& scan) {
  const SineFit fm = fit_sine(scan.delta_theta, scan.intensity_m);
  const SineFit fn = fit_sine(scan.delta_theta, scan.intensity_n);
  // Modulation at rounding level is no interference.
  const auto flat = [](const SineFit& f) {
    return !(f.amplitude > 1e-12 * std::max(std::abs(f.offset), f.amplitude));
  };
  if (flat(fm) || flat(fn)) {
    throw DegenerateFit("classical scan shows no two-beam interference");
  }
  return wrap_signed(fn.phase - fm.phase);
}

Enhancement measure_enhancement(const TransmissionMatrix& matrix, const PhasePattern& flat,
                                const PhasePattern& optimized, std::size_t target) {
  check_output(matrix, target);
  const FieldVector before = transmit(matrix, input_field(matrix, flat));
  Enhancement e;
  e.background = before.squaredNorm() / static_cast<double>(before.size());
  e.target_before = std::norm(before(static_cast<Eigen::Index>(target)));
  e.target_after = std::norm(output_field(matrix, optimized, target));
  return e;
}

double predicted_enhancement(std::size_t segments) {
  return 1.0 + 0.25 * std::numbers::pi * (static_cast<double>(segments) - 1.0);
}

PatternSet optimize_pattern_set(const TransmissionMatrix& matrix, std::size_t segments,
                                std::size_t m, std::size_t n, const OptimizeMethod& method) {
  if (matrix.n_in() < 2 * segments) {
    throw DimensionError("medium has " + std::to_string(matrix.n_in()) +
                         " input channels; two modes of " + std::to_string(segments) +
                         " segments need " + std::to_string(2 * segments));
  }
  const PhasePattern k = pattern_template(InputMode::K, segments);
  const PhasePattern l = pattern_template(InputMode::L, segments);
  return {optimize_pattern(matrix, k, m, method), optimize_pattern(matrix, k, n, method),
          optimize_pattern(matrix, l, m, method), optimize_pattern(matrix, l, n, method)};
}

namespace {

// One trial combination and what the classical measurements say about it.
struct Trial {
  double command = 0.0;
  double log_wk = 0.0;
  double log_wl = 0.0;
  // Measured relative phase minus the target, in (-pi, pi].
  double phase_error = 0.0;
  // log(|T_mk| / |T_nk|) and log(|T_ml| / |T_nl|) from single-input intensities.
  double split_k = 0.0;
  double split_l = 0.0;
  PhasePattern k, l;

  double error() const {
    return std::max({std::abs(phase_error), std::abs(split_k), std::abs(split_l)});
  }
};

class Calibrator {
 public:
  Calibrator(const TransmissionMatrix& matrix, const PatternSet& set, std::size_t m,
             std::size_t n, double alpha)
      : matrix_(matrix), set_(set), m_(m), n_(n), alpha_(alpha), grid_(phase_grid(8)) {}

  Trial evaluate(double command, double log_wk, double log_wl) const {
    Trial t;
    t.command = command;
    t.log_wk = log_wk;
    t.log_wl = log_wl;
    std::tie(t.k, t.l) = combine_patterns(set_.km, set_.kn, set_.lm, set_.ln, command,
                                          std::exp(log_wk), std::exp(log_wl));
    const auto [mk, nk] = fields(t.k);
    const auto [ml, nl] = fields(t.l);
    // Two-input scan as in classical_scan, then single-input intensities.
    std::vector<double> im(grid_.size()), in(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      const Complex shift = std::polar(1.0, grid_[i]);
      im[i] = std::norm(mk + ml * shift);
      in[i] = std::norm(nk + nl * shift);
    }
    t.phase_error = wrap_signed(measured_relative_phase({grid_, im, in}) - alpha_);
    t.split_k = 0.5 * std::log(std::norm(mk) / std::norm(nk));
    t.split_l = 0.5 * std::log(std::norm(ml) / std::norm(nl));
    return t;
  }

  Trial solve_phase(const Trial& start) const {
    return solve(
        start, 1.0, [](const Trial& t) { return t.command; },
        [](const Trial& t) { return t.phase_error; },
        [&](const Trial& t, double c) { return evaluate(c, t.log_wk, t.log_wl); });
  }

  // A larger weight favours the n focus of that mode.
  Trial solve_split(const Trial& start, bool mode_k) const {
    if (mode_k) {
      return solve(
          start, -1.0, [](const Trial& t) { return t.log_wk; },
          [](const Trial& t) { return t.split_k; },
          [&](const Trial& t, double w) { return evaluate(t.command, w, t.log_wl); });
    }
    return solve(
        start, -1.0, [](const Trial& t) { return t.log_wl; },
        [](const Trial& t) { return t.split_l; },
        [&](const Trial& t, double w) { return evaluate(t.command, t.log_wk, w); });
  }

  // Joint Newton steps on (command, l weight) with a finite-difference
  // Jacobian, for when the two couple too strongly for alternation.
  Trial polish(Trial cur) const {
    constexpr double h = 1e-7;
    for (int iter = 0; iter < 20 && cur.error() > 1e-13; ++iter) {
      const Trial dc = evaluate(cur.command + h, cur.log_wk, cur.log_wl);
      const Trial dw = evaluate(cur.command, cur.log_wk, cur.log_wl + h);
      const double j11 = (wrap_signed(dc.phase_error - cur.phase_error)) / h;
      const double j12 = (wrap_signed(dw.phase_error - cur.phase_error)) / h;
      const double j21 = (dc.split_l - cur.split_l) / h;
      const double j22 = (dw.split_l - cur.split_l) / h;
      const double det = j11 * j22 - j12 * j21;
      if (!std::isfinite(det) || det == 0.0) break;
      const double step_c = -(j22 * cur.phase_error - j12 * cur.split_l) / det;
      const double step_w = -(-j21 * cur.phase_error + j11 * cur.split_l) / det;
      bool improved = false;
      for (double scale = 1.0; scale > 1e-6; scale *= 0.5) {
        Trial next = evaluate(cur.command + scale * step_c, cur.log_wk,
                              cur.log_wl + scale * step_w);
        if (next.error() < cur.error()) {
          cur = std::move(next);
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    return cur;
  }

 private:
  // Fields at m and n for one input pattern.
  std::pair<Complex, Complex> fields(const PhasePattern& p) const {
    const auto& e = matrix_.entries();
    const auto rm = static_cast<Eigen::Index>(m_);
    const auto rn = static_cast<Eigen::Index>(n_);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p.segments()));
    Complex fm = 0.0, fn = 0.0;
    for (std::size_t s = 0; s < p.segments(); ++s) {
      const auto ch = static_cast<Eigen::Index>(p.segment_to_channel[s]);
      const Complex z = std::polar(scale, p.phases[s]);
      fm += e(rm, ch) * z;
      fn += e(rn, ch) * z;
    }
    return {fm, fn};
  }

  // Root of g along one knob x. The response is monotone on average with
  // slope near `slope` but has steep steps where segments cross anti-phase,
  // so plain steps are taken until g changes sign, then the bracket is
  // bisected down to adjacent doubles.
  template <class X, class G, class At>
  static Trial solve(Trial cur, double slope, X x, G g, At at) {
    Trial best = cur;
    for (int step = 0; step < 40 && std::abs(g(cur)) > 1e-13; ++step) {
      Trial next = at(cur, x(cur) - g(cur) / slope);
      if (std::abs(g(next)) < std::abs(g(best))) best = next;
      const bool bracketed = (g(next) > 0.0) != (g(cur) > 0.0) && std::abs(g(next)) < 1.0 &&
                             std::abs(g(cur)) < 1.0;
      if (bracketed) {
        Trial lo = g(cur) < 0.0 ? cur : next;
        Trial hi = g(cur) < 0.0 ? next : cur;
        for (int i = 0; i < 80 && std::abs(g(best)) > 1e-13; ++i) {
          const double mid = 0.5 * (x(lo) + x(hi));
          if (mid == x(lo) || mid == x(hi)) break;
          Trial t = at(lo, mid);
          if (std::abs(g(t)) < std::abs(g(best))) best = t;
          (g(t) < 0.0 ? lo : hi) = std::move(t);
        }
        break;
      }
      cur = std::move(next);
    }
    return best;
  }

  const TransmissionMatrix& matrix_;
  const PatternSet& set_;
  std::size_t m_, n_;
  double alpha_;
  std::vector<double> grid_;
};

}  // namespace

namespace {

Trial calibrate(const Calibrator& cal, double alpha, int rounds) {
  // The k split does not depend on the command or the l weight. Moving the
  // l weight off 1 first keeps the phase search clear of segments that sit
  // exactly in anti-phase, where the l pattern is singular.
  Trial cur = cal.solve_split(cal.evaluate(alpha, 0.0, 0.0), true);
  cur = cal.solve_split(cur, false);
  Trial best = cur;
  for (int round = 0; round < rounds && best.error() > 1e-13; ++round) {
    cur = cal.solve_split(cal.solve_phase(cur), false);
    if (cur.error() < best.error()) best = cur;
  }
  if (best.error() > 1e-13) {
    Trial t = cal.polish(best);
    if (t.error() < best.error()) best = std::move(t);
  }
  return best;
}

}  // namespace

ProgrammedPatterns program_circuit(const TransmissionMatrix& matrix, const PatternSet& set,
                                   std::size_t m, std::size_t n, double alpha,
                                   int calibration_rounds) {
  if (m == n) throw InvalidArgument("program_circuit: output modes m and n must differ");
  ProgrammedPatterns out;
  if (calibration_rounds <= 0) {
    std::tie(out.k, out.l) = combine_patterns(set.km, set.kn, set.lm, set.ln, alpha);
    out.alpha_command = alpha;
  } else {
    // When the balanced point sits on an anti-phase singularity there is no
    // exact solution nearby. The global phase of the k->n pattern is free, so
    // retry with it shifted; that moves the solution along the l-mode
    // singularities.
    Trial best;
    double best_offset = 0.0;
    bool have = false;
    for (double offset : {0.0, 2.0, 4.0, 1.0, 3.0, 5.0}) {
      PatternSet shifted = set;
      for (double& phi : shifted.kn.phases) phi = wrap_phase(phi + offset);
      Trial t = calibrate(Calibrator(matrix, shifted, m, n, alpha), alpha, calibration_rounds);
      if (!have || t.error() < best.error()) {
        best = std::move(t);
        best_offset = offset;
        have = true;
      }
      if (best.error() <= 1e-12) break;
    }
    out.k = std::move(best.k);
    out.l = std::move(best.l);
    out.alpha_command = best.command;
    out.weight_k = std::exp(best.log_wk);
    out.weight_l = std::exp(best.log_wl);
    out.kn_offset = best_offset;
  }
  out.circuit = effective_circuit(matrix, out.k, out.l, m, n, alpha);
  return out;
}

}  // namespace scatterqi
