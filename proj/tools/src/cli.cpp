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

#include "cli.hpp"

#include <CLI11.hpp>

#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "scatterqi/config.hpp"
#include "scatterqi/errors.hpp"
#include "scatterqi/experiments.hpp"
#include "scatterqi/matrix_io.hpp"
#include "scatterqi/output.hpp"
#include "scatterqi/pattern_io.hpp"
#include "scatterqi/selftest.hpp"

namespace scatterqi {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  bool force = false;
  unsigned threads = 1;
  bool quiet = false;

  // probabilities
  double t = 0.0;
  std::string alpha = "0";
  std::optional<double> overlap;
};

// Exit code 1: bad invocation, not a failure of the computation.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Output bookkeeping for one scenario run.
class Run {
 public:
  Run(const Options& opts, std::string scenario) : scenario_(std::move(scenario)) {
    if (!opts.config_path.empty()) config_ = parse_config(read_file(opts.config_path));
    if (opts.seed) config_.seed = *opts.seed;
    config_.validate();
    dir_ = opts.out_dir;
    stem_ = artifact_stem(scenario_, config_.seed);
    if (fs::exists(manifest_path()) && !opts.force) {
      throw UsageError("manifest " + manifest_path().string() +
                       " exists; pass --force to overwrite");
    }
    fs::create_directories(dir_);
  }

  const ScenarioConfig& config() const { return config_; }
  const std::string& stem() const { return stem_; }

  fs::path file(const std::string& suffix) const { return dir_ / (stem_ + suffix); }

  void write(const std::string& suffix, std::string_view text) {
    write_text_file(file(suffix), text);
    files_.push_back(stem_ + suffix);
  }

  void finish() const {
    Manifest m;
    m.emplace_back("scenario", scenario_);
    m.emplace_back("version", SCATTERQI_VERSION);
    for (auto& kv : config_manifest(config_)) m.push_back(kv);
    std::string files;
    for (const auto& f : files_) files += (files.empty() ? "" : ",") + f;
    m.emplace_back("files", files);
    write_manifest(manifest_path(), m);
  }

  void record(const std::string& name) { files_.push_back(name); }

 private:
  fs::path manifest_path() const { return dir_ / (stem_ + "_manifest.txt"); }

  std::string scenario_;
  ScenarioConfig config_;
  fs::path dir_;
  std::string stem_;
  std::vector<std::string> files_;
};

std::string fmt(double v) { return format_double(v); }

std::string gen_medium(const Options& opts) {
  Run run(opts, "gen-medium");
  const auto& cfg = run.config();
  if (!cfg.medium_file.empty()) throw UsageError("gen-medium generates; unset medium.file");
  const TransmissionMatrix medium = build_medium(cfg, opts.threads);
  write_matrix_file(run.file(".sqtm"), medium);
  run.record(run.stem() + ".sqtm");
  run.finish();
  return "gen-medium: " + std::to_string(medium.n_out()) + "x" + std::to_string(medium.n_in()) +
         " " + to_string(medium.kind()) + " medium -> " + run.file(".sqtm").string();
}

std::string optimize(const Options& opts) {
  Run run(opts, "optimize");
  const auto& cfg = run.config();
  const TransmissionMatrix medium = build_medium(cfg, opts.threads);
  const PatternSet set =
      optimize_pattern_set(medium, cfg.segments, cfg.output_m, cfg.output_n, cfg.method);
  run.write("_km.csv", pattern_csv(set.km));
  run.write("_kn.csv", pattern_csv(set.kn));
  run.write("_lm.csv", pattern_csv(set.lm));
  run.write("_ln.csv", pattern_csv(set.ln));
  run.finish();
  const PhasePattern flat = pattern_template(InputMode::K, cfg.segments);
  const double e = measure_enhancement(medium, flat, set.km, cfg.output_m).factor();
  return "optimize: 4 patterns of " + std::to_string(cfg.segments) +
         " segments, enhancement k->m " + fmt(e);
}

ProgrammedPatterns program_from(const ScenarioConfig& cfg, const TransmissionMatrix& medium) {
  const PatternSet set =
      optimize_pattern_set(medium, cfg.segments, cfg.output_m, cfg.output_n, cfg.method);
  return program_circuit(medium, set, cfg.output_m, cfg.output_n, cfg.alpha,
                         cfg.calibration_rounds);
}

std::string program(const Options& opts) {
  Run run(opts, "program");
  const auto& cfg = run.config();
  const TransmissionMatrix medium = build_medium(cfg, opts.threads);
  const ProgrammedPatterns p = program_from(cfg, medium);
  run.write("_k.csv", pattern_csv(p.k));
  run.write("_l.csv", pattern_csv(p.l));
  run.write("_circuit.csv", circuit_csv(p.circuit));
  run.finish();
  return "program: t_fit " + fmt(p.circuit.t_fit) + ", alpha_fit " + fmt(p.circuit.alpha_fit) +
         ", sigma_max " + fmt(p.circuit.largest_singular_value);
}

std::string classical(const Options& opts) {
  Run run(opts, "classical-scan");
  const auto& cfg = run.config();
  const TransmissionMatrix medium = build_medium(cfg, opts.threads);
  const ProgrammedPatterns p = program_from(cfg, medium);
  const std::vector<double> grid = phase_grid(cfg.scan_points);
  const ClassicalScan scan =
      classical_scan(medium, p.k, p.l, cfg.output_m, cfg.output_n, grid);
  const double measured = measured_relative_phase(scan);
  run.write(".csv", classical_scan_csv(scan));
  CsvTable summary({"alpha_set", "alpha_command", "alpha_measured", "alpha_fit", "t_fit"});
  summary.add_row(std::vector<double>{cfg.alpha, p.alpha_command, measured, p.circuit.alpha_fit,
                                      p.circuit.t_fit});
  run.write("_summary.csv", summary.str());
  run.finish();
  return "classical-scan: measured relative phase " + fmt(measured) + " for alpha " +
         fmt(cfg.alpha);
}

std::string hom(const Options& opts) {
  Run run(opts, "hom-scan");
  const auto& cfg = run.config();
  std::vector<HomCurve> curves;
  if (cfg.circuit == CircuitSource::Ideal) {
    curves = run_hom_reproduction(cfg);
  } else {
    for (auto& entry : run_programmed_hom(cfg, opts.threads)) {
      curves.push_back(std::move(entry.curve));
    }
  }
  std::string summary = "hom-scan:";
  for (const auto& c : curves) {
    run.write("_" + c.label + ".csv", coincidence_scan_csv(c.scan));
    summary += " " + c.label + " V=" + fmt(c.visibility.v);
  }
  run.write("_summary.csv", hom_summary_csv(curves));
  run.finish();
  return summary;
}

std::string alpha_scan(const Options& opts) {
  Run run(opts, "alpha-scan");
  const AlphaScanResult r = run_alpha_scan(run.config(), opts.threads);
  run.write(".csv", alpha_scan_csv(r));
  run.write("_summary.csv", alpha_scan_summary_csv(r));
  run.finish();
  return "alpha-scan: v0_fit " + fmt(r.v0_fit) + " +- " + fmt(r.v0_std_err) + " over " +
         std::to_string(r.alphas.size()) + " points";
}

std::string enhancement(const Options& opts) {
  Run run(opts, "enhancement-study");
  const auto rows = run_enhancement_study(run.config(), opts.threads);
  run.write(".csv", enhancement_csv(rows));
  run.finish();
  std::string summary = "enhancement-study:";
  for (const auto& r : rows) {
    summary += " N=" + std::to_string(r.segments) + " " + fmt(r.mean) + " (predicted " +
               fmt(r.predicted) + ")";
  }
  return summary;
}

void probabilities(const Options& opts, std::ostream& out) {
  const double alpha = parse_angle(opts.alpha);
  const OutcomeDistribution p =
      opts.overlap ? outcome_distribution(ideal_circuit(opts.t, alpha).sub_matrix, *opts.overlap)
                   : eq2_probabilities(opts.t, alpha);
  const std::pair<const char*, double> rows[] = {{"p20", p.p20}, {"p02", p.p02},
                                                 {"p11", p.p11}, {"p10", p.p10},
                                                 {"p01", p.p01}, {"p00", p.p00}};
  for (const auto& [label, value] : rows) out << label << " = " << fmt(value) << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Programmable two-photon circuits in a scattering medium"};
  app.set_version_flag("--version", std::string(SCATTERQI_VERSION));
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", opts.config_path, "Scenario config file");
  app.add_option("--seed", opts.seed, "Master seed (overrides the config)");
  app.add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
  app.add_flag("--force", opts.force, "Overwrite an existing manifest");
  app.add_option("--threads", opts.threads, "Worker threads (never changes results)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--quiet", opts.quiet, "Suppress the summary line");

  struct Entry {
    const char* name;
    const char* help;
  };
  const Entry scenarios[] = {
      {"gen-medium", "Generate a transmission matrix and store it"},
      {"optimize", "Optimize the four focusing patterns"},
      {"program", "Program a two-photon circuit at the configured alpha"},
      {"classical-scan", "Coherent two-input scan of a programmed circuit"},
      {"hom-scan", "Coincidence-versus-delay scans"},
      {"alpha-scan", "Visibility versus circuit phase and V0 fit"},
      {"enhancement-study", "Focusing enhancement versus segment count"},
  };
  for (const auto& e : scenarios) app.add_subcommand(e.name, e.help);
  auto* probs = app.add_subcommand("probabilities", "Outcome probabilities of the ideal circuit");
  probs->add_option("--t", opts.t, "Circuit amplitude")->required();
  probs->add_option("--alpha", opts.alpha, "Circuit phase (radians or multiples of pi)")
      ->required();
  probs->add_option("--overlap", opts.overlap, "Two-photon overlap (default 1)");
  app.add_subcommand("selftest", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    std::string summary;
    if (cmd == "probabilities") {
      probabilities(opts, out);
      return 0;
    }
    if (cmd == "selftest") {
      std::ostringstream report;
      const bool ok = run_selftest(report);
      if (!opts.quiet || !ok) out << report.str();
      if (!ok) {
        err << "selftest: failures\n";
        return 2;
      }
      summary = "selftest: all checks passed";
    } else if (cmd == "gen-medium") {
      summary = gen_medium(opts);
    } else if (cmd == "optimize") {
      summary = optimize(opts);
    } else if (cmd == "program") {
      summary = program(opts);
    } else if (cmd == "classical-scan") {
      summary = classical(opts);
    } else if (cmd == "hom-scan") {
      summary = hom(opts);
    } else if (cmd == "alpha-scan") {
      summary = alpha_scan(opts);
    } else {
      summary = enhancement(opts);
    }
    if (!opts.quiet) out << summary << '\n';
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace scatterqi
