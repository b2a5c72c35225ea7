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

#ifndef SCATTERQI_MATRIX_IO_HPP
#define SCATTERQI_MATRIX_IO_HPP

#include <filesystem>
#include <iosfwd>

#include "scatterqi/medium.hpp"

namespace scatterqi {

// Binary container, all integers little-endian:
//
//   offset  size  field
//        0     8  magic "SQTMATRX"
//        8     4  format version (1)
//       12     4  reserved, zero
//       16     8  n_out
//       24     8  n_in
//       32     4  kind tag (1 = gaussian, 2 = unitary)
//       36     4  reserved, zero
//       40     8  seed
//       48  16*N  row-major entries, each (real, imag) as IEEE-754 binary64
//
// Reading back yields bit-identical entries.
void write_matrix(std::ostream& out, const TransmissionMatrix& matrix);
TransmissionMatrix read_matrix(std::istream& in);

void write_matrix_file(const std::filesystem::path& path, const TransmissionMatrix& matrix);
TransmissionMatrix read_matrix_file(const std::filesystem::path& path);

}  // namespace scatterqi

#endif  // SCATTERQI_MATRIX_IO_HPP
