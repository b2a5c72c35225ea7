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

#include "scatterqi/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "scatterqi/errors.hpp"

namespace scatterqi {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::uint64_t> to_u64(std::string_view s) {
  s = trim(s);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::size_t positive(std::string_view v) {
  const auto n = to_u64(v);
  if (!n || *n == 0) throw InvalidArgument("expected positive integer, got '" + std::string(v) + "'");
  return static_cast<std::size_t>(*n);
}

std::size_t nonnegative(std::string_view v) {
  const auto n = to_u64(v);
  if (!n) throw InvalidArgument("expected nonnegative integer, got '" + std::string(v) + "'");
  return static_cast<std::size_t>(*n);
}

double real(std::string_view v) {
  const auto d = to_double(v);
  if (!d) throw InvalidArgument("expected real number, got '" + std::string(v) + "'");
  return *d;
}

double unit_interval(std::string_view v) {
  const double d = real(v);
  if (d < 0.0 || d > 1.0) throw InvalidArgument("expected number in [0, 1], got '" + std::string(v) + "'");
  return d;
}

template <class Enum>
Enum choice(std::string_view v, std::initializer_list<std::pair<std::string_view, Enum>> options) {
  std::string names;
  for (const auto& [name, value] : options) {
    if (v == name) return value;
    names += names.empty() ? "" : "|";
    names += name;
  }
  throw InvalidArgument("expected one of " + names + ", got '" + std::string(v) + "'");
}

std::string joined(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ",";
    out += format_double(v);
  }
  return out;
}

struct KeySpec {
  std::string_view section;
  std::function<void(ScenarioConfig&, std::string_view)> apply;
};

const std::map<std::string_view, KeySpec>& key_table() {
  using C = ScenarioConfig;
  static const std::map<std::string_view, KeySpec> table = {
      {"seed", {"run", [](C& c, std::string_view v) {
         const auto s = to_u64(v);
         if (!s) throw InvalidArgument("expected unsigned 64-bit integer, got '" + std::string(v) + "'");
         c.seed = *s;
       }}},
      {"kind", {"medium", [](C& c, std::string_view v) {
         c.medium_kind = choice<EnsembleKind>(
             v, {{"gaussian", EnsembleKind::Gaussian}, {"unitary", EnsembleKind::Unitary}});
       }}},
      {"n_out", {"medium", [](C& c, std::string_view v) { c.n_out = positive(v); }}},
      {"n_in", {"medium", [](C& c, std::string_view v) {
         if (v == "auto") {
           c.n_in.reset();
         } else {
           c.n_in = positive(v);
         }
       }}},
      {"file", {"medium", [](C& c, std::string_view v) { c.medium_file = std::string(v); }}},
      {"segments", {"shaping", [](C& c, std::string_view v) { c.segments = positive(v); }}},
      {"output_m", {"shaping", [](C& c, std::string_view v) { c.output_m = nonnegative(v); }}},
      {"output_n", {"shaping", [](C& c, std::string_view v) { c.output_n = nonnegative(v); }}},
      {"method", {"shaping", [](C& c, std::string_view v) {
         c.method.kind = choice<OptimizeMethod::Kind>(
             v, {{"analytic", OptimizeMethod::Kind::Analytic},
                 {"stepped", OptimizeMethod::Kind::SteppedPhase}});
       }}},
      {"steps", {"shaping", [](C& c, std::string_view v) {
         const std::size_t s = positive(v);
         if (s < 3) throw InvalidArgument("expected integer >= 3, got '" + std::string(v) + "'");
         c.method.steps = static_cast<int>(s);
       }}},
      {"passes", {"shaping", [](C& c, std::string_view v) {
         c.method.passes = static_cast<int>(positive(v));
       }}},
      {"calibration_rounds", {"shaping", [](C& c, std::string_view v) {
         c.calibration_rounds = static_cast<int>(nonnegative(v));
       }}},
      {"alpha", {"shaping", [](C& c, std::string_view v) { c.alpha = parse_angle(v); }}},
      {"preset", {"source", [](C& c, std::string_view v) {
         source_preset(v);
         c.source_preset = std::string(v);
       }}},
      {"overlap", {"source", [](C& c, std::string_view v) { c.overlap = unit_interval(v); }}},
      {"bandwidth_nm", {"source", [](C& c, std::string_view v) {
         const double b = real(v);
         if (!(b > 0.0)) throw InvalidArgument("expected positive number, got '" + std::string(v) + "'");
         c.bandwidth_nm = b;
       }}},
      {"mean_pairs", {"source", [](C& c, std::string_view v) {
         const double mu = real(v);
         if (mu < 0.0) throw InvalidArgument("expected nonnegative number, got '" + std::string(v) + "'");
         c.mean_pairs = mu;
       }}},
      {"efficiency_m", {"source", [](C& c, std::string_view v) { c.efficiency_m = unit_interval(v); }}},
      {"efficiency_n", {"source", [](C& c, std::string_view v) { c.efficiency_n = unit_interval(v); }}},
      {"alpha_grid", {"scan", [](C& c, std::string_view v) { c.alpha_grid = parse_grid(v, true); }}},
      {"delay_grid", {"scan", [](C& c, std::string_view v) {
         if (v == "auto") {
           c.delay_grid.clear();
         } else {
           c.delay_grid = parse_grid(v, false);
         }
       }}},
      {"hom_alphas", {"scan", [](C& c, std::string_view v) { c.hom_alphas = parse_grid(v, true); }}},
      {"mode", {"scan", [](C& c, std::string_view v) {
         c.mode = choice<SimulationMode>(
             v, {{"analytic", SimulationMode::Analytic}, {"montecarlo", SimulationMode::MonteCarlo}});
       }}},
      {"circuit", {"scan", [](C& c, std::string_view v) {
         c.circuit = choice<CircuitSource>(
             v, {{"ideal", CircuitSource::Ideal}, {"programmed", CircuitSource::Programmed}});
       }}},
      {"ideal_t", {"scan", [](C& c, std::string_view v) {
         const double t = real(v);
         if (t < 0.0) throw InvalidArgument("expected nonnegative number, got '" + std::string(v) + "'");
         c.ideal_t = t;
       }}},
      {"pulses", {"scan", [](C& c, std::string_view v) { c.pulses = positive(v); }}},
      {"scan_points", {"scan", [](C& c, std::string_view v) {
         const std::size_t n = positive(v);
         if (n < 3) throw InvalidArgument("expected integer >= 3, got '" + std::string(v) + "'");
         c.scan_points = n;
       }}},
      {"segment_counts", {"enhancement", [](C& c, std::string_view v) {
         c.enhancement_segments.clear();
         for (auto item : split(v, ',')) c.enhancement_segments.push_back(positive(item));
       }}},
      {"trials", {"enhancement", [](C& c, std::string_view v) { c.trials = positive(v); }}},
  };
  return table;
}

}  // namespace

ScenarioConfig::ScenarioConfig()
    : alpha_grid(parse_grid("0:pi:9", true)), hom_alphas{std::numbers::pi, 0.0} {}

std::size_t ScenarioConfig::effective_n_in() const { return n_in.value_or(2 * segments); }

std::size_t ScenarioConfig::effective_n_out() const {
  if (n_out) return *n_out;
  return medium_kind == EnsembleKind::Unitary ? effective_n_in() : 4000;
}

PhotonPairSource ScenarioConfig::source() const {
  PhotonPairSource s = scatterqi::source_preset(source_preset);
  if (overlap) s.intrinsic_overlap = *overlap;
  if (bandwidth_nm) {
    s.rms_angular_bandwidth = rms_bandwidth_from_fwhm(*bandwidth_nm * 1e-9, s.center_wavelength_m);
  }
  if (mean_pairs) s.mean_pairs_per_pulse = *mean_pairs;
  s.validate();
  return s;
}

void ScenarioConfig::validate() const {
  if (alpha_grid.empty()) throw InvalidArgument("alpha_grid is empty");
  if (hom_alphas.empty()) throw InvalidArgument("hom_alphas is empty");
  if (enhancement_segments.empty()) throw InvalidArgument("segment_counts is empty");
  if (medium_file.empty()) {
    if (effective_n_in() < 2 * segments) {
      throw InvalidArgument("n_in = " + std::to_string(effective_n_in()) + " cannot hold two modes of " +
                            std::to_string(segments) + " segments");
    }
    if (medium_kind == EnsembleKind::Unitary && effective_n_out() != effective_n_in()) {
      throw InvalidArgument("unitary medium needs n_out == n_in");
    }
    if (output_m >= effective_n_out() || output_n >= effective_n_out()) {
      throw InvalidArgument("output channel beyond n_out");
    }
  }
  if (output_m == output_n) throw InvalidArgument("output_m and output_n must differ");
  source();
}

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error("config line " + std::to_string(line) + ": " + message), line_(line) {}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config;
  std::string_view section;
  std::size_t line_no = 0;
  const auto& table = key_table();
  static const std::vector<std::string_view> sections = {"run", "medium", "shaping", "source",
                                                         "scan", "enhancement"};
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(line_no, "malformed section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (std::find(sections.begin(), sections.end(), name) == sections.end()) {
        throw ConfigError(line_no, "unknown section [" + std::string(name) + "]");
      }
      section = name;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
    if (!section.empty() && it->second.section != section) {
      throw ConfigError(line_no, "key '" + std::string(key) + "' belongs to section [" +
                                     std::string(it->second.section) + "]");
    }
    try {
      it->second.apply(config, value);
    } catch (const InvalidArgument& e) {
      throw ConfigError(line_no, std::string(key) + ": " + e.what());
    }
  }
  return config;
}

double parse_angle(std::string_view text) {
  std::string_view s = trim(text);
  const auto fail = [&] { return InvalidArgument("bad angle '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) {
    const auto v = to_double(s);
    if (!v) throw fail();
    return *v;
  }
  // [sign][coef][*]pi[/den]
  std::string_view coef = trim(s.substr(0, pi_pos));
  std::string_view rest = trim(s.substr(pi_pos + 2));
  double sign = 1.0;
  if (!coef.empty() && (coef.front() == '-' || coef.front() == '+')) {
    sign = coef.front() == '-' ? -1.0 : 1.0;
    coef = trim(coef.substr(1));
  }
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  double factor = 1.0;
  if (!coef.empty()) {
    const auto v = to_double(coef);
    if (!v) throw fail();
    factor = *v;
  }
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw fail();
    const auto v = to_double(rest.substr(1));
    if (!v || *v == 0.0) throw fail();
    den = *v;
  }
  return sign * factor * std::numbers::pi / den;
}

std::vector<double> parse_grid(std::string_view text, bool angles) {
  const auto element = [angles](std::string_view v) { return angles ? parse_angle(v) : real(v); };
  const auto parts = split(text, ':');
  std::vector<double> out;
  if (parts.size() == 3) {
    const double start = element(parts[0]);
    const double stop = element(parts[1]);
    const auto count = to_u64(parts[2]);
    if (!count || *count == 0) {
      throw InvalidArgument("grid count must be a positive integer in '" + std::string(text) + "'");
    }
    if (*count == 1) return {start};
    for (std::uint64_t i = 0; i < *count; ++i) {
      out.push_back(i + 1 == *count ? stop
                                    : start + (stop - start) * static_cast<double>(i) /
                                                  static_cast<double>(*count - 1));
    }
    return out;
  }
  if (parts.size() != 1) throw InvalidArgument("grid must be 'start:stop:count' or a list");
  for (auto item : split(text, ',')) {
    if (item.empty()) throw InvalidArgument("empty element in grid '" + std::string(text) + "'");
    out.push_back(element(item));
  }
  return out;
}

Manifest config_manifest(const ScenarioConfig& c) {
  Manifest m;
  m.emplace_back("seed", std::to_string(c.seed));
  m.emplace_back("medium.kind", to_string(c.medium_kind));
  m.emplace_back("medium.n_out", std::to_string(c.effective_n_out()));
  m.emplace_back("medium.n_in", std::to_string(c.effective_n_in()));
  m.emplace_back("medium.file", c.medium_file);
  m.emplace_back("shaping.segments", std::to_string(c.segments));
  m.emplace_back("shaping.output_m", std::to_string(c.output_m));
  m.emplace_back("shaping.output_n", std::to_string(c.output_n));
  m.emplace_back("shaping.method",
                 c.method.kind == OptimizeMethod::Kind::Analytic ? "analytic" : "stepped");
  m.emplace_back("shaping.steps", std::to_string(c.method.steps));
  m.emplace_back("shaping.passes", std::to_string(c.method.passes));
  m.emplace_back("shaping.calibration_rounds", std::to_string(c.calibration_rounds));
  m.emplace_back("shaping.alpha", format_double(c.alpha));
  const PhotonPairSource s = c.source();
  m.emplace_back("source.preset", c.source_preset);
  m.emplace_back("source.overlap", format_double(s.intrinsic_overlap));
  m.emplace_back("source.rms_angular_bandwidth", format_double(s.rms_angular_bandwidth));
  m.emplace_back("source.mean_pairs", format_double(s.mean_pairs_per_pulse));
  m.emplace_back("source.efficiency_m", format_double(c.efficiency_m));
  m.emplace_back("source.efficiency_n", format_double(c.efficiency_n));
  m.emplace_back("scan.alpha_grid", joined(c.alpha_grid));
  m.emplace_back("scan.delay_grid", c.delay_grid.empty() ? "auto" : joined(c.delay_grid));
  m.emplace_back("scan.hom_alphas", joined(c.hom_alphas));
  m.emplace_back("scan.mode", c.mode == SimulationMode::Analytic ? "analytic" : "montecarlo");
  m.emplace_back("scan.circuit", c.circuit == CircuitSource::Ideal ? "ideal" : "programmed");
  m.emplace_back("scan.ideal_t", format_double(c.ideal_t));
  m.emplace_back("scan.pulses", std::to_string(c.pulses));
  m.emplace_back("scan.scan_points", std::to_string(c.scan_points));
  std::string segs;
  for (auto n : c.enhancement_segments) segs += (segs.empty() ? "" : ",") + std::to_string(n);
  m.emplace_back("enhancement.segment_counts", segs);
  m.emplace_back("enhancement.trials", std::to_string(c.trials));
  return m;
}

}  // namespace scatterqi
