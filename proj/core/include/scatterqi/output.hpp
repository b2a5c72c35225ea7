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

#ifndef SCATTERQI_OUTPUT_HPP
#define SCATTERQI_OUTPUT_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scatterqi {

// Shortest round-trip-safe text for a double: printf("%.17g") semantics,
// locale independent.
std::string format_double(double value);

// Comma-separated text with a header row. Numbers are written through
// format_double.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& add_row(const std::vector<double>& values);
  CsvTable& add_row(const std::vector<std::string>& cells);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// key=value lines, in the given order.
using Manifest = std::vector<std::pair<std::string, std::string>>;

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

// "<scenario>_seed<seed>", the stem shared by every file a scenario writes.
std::string artifact_stem(std::string_view scenario, unsigned long long seed);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace scatterqi

#endif  // SCATTERQI_OUTPUT_HPP
