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

#include "qsplit/errors.hpp"

namespace qsplit {

const char *to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument:
        return "invalid-argument";
    case ErrorKind::ResourceLimit:
        return "resource-limit";
    case ErrorKind::InvalidCut:
        return "invalid-cut";
    case ErrorKind::IncompleteResults:
        return "incomplete-results";
    case ErrorKind::NumericFailure:
        return "numeric-failure";
    case ErrorKind::ParseError:
        return "parse-error";
    case ErrorKind::SchemaError:
        return "schema-error";
    case ErrorKind::CapacityError:
        return "capacity-error";
    case ErrorKind::ConfigError:
        return "config-error";
    }
    return "unknown";
}

} // namespace qsplit
