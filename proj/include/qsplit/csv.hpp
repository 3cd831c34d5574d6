// Copyright 2026 The qsplit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qsplit {

/// Shortest text that parses back to the same double. Report files use it so
/// equal values always print identically.
std::string format_number(double v);

/// Writes one comma-separated line. Fields containing commas or quotes are
/// quoted.
void write_csv_row(std::ostream &out, std::span<const std::string> fields);

} // namespace qsplit
