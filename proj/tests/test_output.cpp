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

#include "scatterqi/output.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "scatterqi/errors.hpp"
#include "scatterqi/pattern_io.hpp"
#include "scatterqi/rng.hpp"
#include "scatterqi/twophoton.hpp"

namespace scatterqi {
namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Output, FormatDoubleRoundTrips) {
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-2.0), "-2");
  EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = (rng.uniform() - 0.5) * std::pow(10.0, 20.0 * rng.uniform() - 10.0);
    EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  }
}

TEST(Output, CsvTable) {
  CsvTable t({"a", "b"});
  t.add_row(std::vector<double>{1.0, 0.25}).add_row(std::vector<std::string>{"x", "y"});
  EXPECT_EQ(t.str(), "a,b\n1,0.25\nx,y\n");
  EXPECT_THROW(t.add_row(std::vector<double>{1.0}), InvalidArgument);
  EXPECT_EQ(CsvTable({"only"}).str(), "only\n");
}

TEST(Output, FilesAndStems) {
  EXPECT_EQ(artifact_stem("alpha-scan", 42), "alpha-scan_seed42");
  EXPECT_EQ(artifact_stem("x", 18446744073709551615ull), "x_seed18446744073709551615");
  const auto dir = std::filesystem::temp_directory_path() / "scatterqi_output_test";
  std::filesystem::create_directories(dir);
  CsvTable t({"a"});
  t.add_row(std::vector<double>{3.0});
  t.write(dir / "t.csv");
  EXPECT_EQ(slurp(dir / "t.csv"), "a\n3\n");
  write_manifest(dir / "m.txt", {{"seed", "1"}, {"version", "0.1.0"}});
  EXPECT_EQ(slurp(dir / "m.txt"), "seed=1\nversion=0.1.0\n");
  write_text_file(dir / "m.txt", "short");
  EXPECT_EQ(slurp(dir / "m.txt"), "short");
  EXPECT_ANY_THROW(write_text_file(dir / "missing" / "x.txt", "x"));
  std::filesystem::remove_all(dir);
}

TEST(PatternIo, RoundTripsExactly) {
  PhasePattern p = pattern_template(InputMode::L, 5);
  Rng rng(3);
  for (double& phi : p.phases) phi = 6.0 * rng.uniform();
  const std::string text = pattern_csv(p);
  EXPECT_EQ(text.substr(0, text.find('\n')), "segment,channel,phase_rad");
  std::istringstream in(text);
  const PhasePattern q = parse_pattern_csv(in, InputMode::L);
  EXPECT_EQ(q.phases, p.phases);
  EXPECT_EQ(q.segment_to_channel, p.segment_to_channel);
  EXPECT_EQ(q.input_mode, InputMode::L);
}

TEST(PatternIo, MalformedPatternsAreRejected) {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_pattern_csv(in, InputMode::K);
  };
  EXPECT_THROW(parse("seg,channel,phase\n0,0,0\n"), FormatError);
  EXPECT_THROW(parse("segment,channel,phase_rad\n1,0,0\n"), FormatError);
  EXPECT_THROW(parse("segment,channel,phase_rad\n0,0\n"), FormatError);
  EXPECT_THROW(parse("segment,channel,phase_rad\n0,0,abc\n"), FormatError);
  EXPECT_THROW(parse("segment,channel,phase_rad\n0,0,7\n"), InvalidArgument);
  EXPECT_THROW(parse("segment,channel,phase_rad\n"), InvalidArgument);
}

TEST(PatternIo, CircuitCsv) {
  const auto c = ideal_circuit(0.5, 0.0);
  const std::string text = circuit_csv(c);
  const auto nl = text.find('\n');
  EXPECT_EQ(text.substr(0, nl),
            "t_mk_re,t_mk_im,t_ml_re,t_ml_im,t_nk_re,t_nk_im,t_nl_re,t_nl_im,alpha_set,alpha_fit,"
            "t_fit,sigma_max");
  const std::string row = text.substr(nl + 1);
  EXPECT_EQ(row.substr(0, row.rfind(',') + 1), "0.5,0,0.5,0,0.5,0,0.5,0,0,0,0.5,");
  // Largest singular value of 0.5 [[1, 1], [1, 1]] is 1.
  EXPECT_NEAR(std::strtod(row.c_str() + row.rfind(',') + 1, nullptr), 1.0, 1e-15);
  EXPECT_EQ(row.back(), '\n');
}

}  // namespace
}  // namespace scatterqi
