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

#include "scatterqi/pattern_io.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <string_view>
#include <vector>

#include "scatterqi/errors.hpp"
#include "scatterqi/output.hpp"

namespace scatterqi {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view text, std::size_t line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError("pattern CSV line " + std::to_string(line_no) + ": bad number '" +
                      std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string pattern_csv(const PhasePattern& pattern) {
  validate(pattern);
  std::ostringstream out;
  out << "segment,channel,phase_rad\n";
  for (std::size_t s = 0; s < pattern.segments(); ++s) {
    out << s << ',' << pattern.segment_to_channel[s] << ',' << format_double(pattern.phases[s])
        << '\n';
  }
  return out.str();
}

PhasePattern parse_pattern_csv(std::istream& in, InputMode mode) {
  std::string line;
  if (!std::getline(in, line) || line != "segment,channel,phase_rad") {
    throw FormatError("pattern CSV must start with 'segment,channel,phase_rad'");
  }
  PhasePattern p;
  p.input_mode = mode;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 3) {
      throw FormatError("pattern CSV line " + std::to_string(line_no) + ": expected 3 cells");
    }
    const auto segment = parse_number<std::size_t>(cells[0], line_no);
    if (segment != p.phases.size()) {
      throw FormatError("pattern CSV line " + std::to_string(line_no) +
                        ": segments must be listed in order");
    }
    p.segment_to_channel.push_back(parse_number<std::size_t>(cells[1], line_no));
    p.phases.push_back(parse_number<double>(cells[2], line_no));
  }
  validate(p);
  return p;
}

std::string circuit_csv(const ProgrammedCircuit& circuit) {
  CsvTable table({"t_mk_re", "t_mk_im", "t_ml_re", "t_ml_im", "t_nk_re", "t_nk_im", "t_nl_re",
                  "t_nl_im", "alpha_set", "alpha_fit", "t_fit", "sigma_max"});
  const auto& b = circuit.sub_matrix;
  table.add_row(std::vector<double>{b(0, 0).real(), b(0, 0).imag(), b(0, 1).real(),
                                    b(0, 1).imag(), b(1, 0).real(), b(1, 0).imag(),
                                    b(1, 1).real(), b(1, 1).imag(), circuit.alpha_set,
                                    circuit.alpha_fit, circuit.t_fit,
                                    circuit.largest_singular_value});
  return table.str();
}

}  // namespace scatterqi
