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

#ifndef SCATTERQI_ERRORS_HPP
#define SCATTERQI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scatterqi {

// Bad scalar argument: zero sizes, out-of-range parameters, mismatched patterns.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Vector/matrix shapes or channel indices that do not fit the matrix.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Physically inadmissible request, e.g. a non-embeddable (t, alpha).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UndefinedVisibility : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed on-disk data (matrix container, pattern CSV).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scatterqi

#endif  // SCATTERQI_ERRORS_HPP
