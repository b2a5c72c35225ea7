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

#ifndef SCATTERQI_SELFTEST_HPP
#define SCATTERQI_SELFTEST_HPP

#include <ostream>

namespace scatterqi {

// Small-scale invariant checks; one `ok`/`FAIL` line per check.
// Returns true when all pass.
bool run_selftest(std::ostream& out);

}  // namespace scatterqi

#endif  // SCATTERQI_SELFTEST_HPP
