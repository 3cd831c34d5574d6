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

#include <stdexcept>
#include <string>

namespace qsplit {

/// Error categories raised across the library. Each maps onto one exception
/// type so callers can catch precisely what they can recover from.
enum class ErrorKind {
    InvalidArgument,
    ResourceLimit,
    InvalidCut,
    IncompleteResults,
    NumericFailure,
    ParseError,
    SchemaError,
    CapacityError,
    ConfigError,
};

const char *to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

template <ErrorKind K> class TypedError : public Error {
  public:
    explicit TypedError(const std::string &what) : Error(K, what) {}
};

using InvalidArgument = TypedError<ErrorKind::InvalidArgument>;
using ResourceLimit = TypedError<ErrorKind::ResourceLimit>;
using InvalidCut = TypedError<ErrorKind::InvalidCut>;
using IncompleteResults = TypedError<ErrorKind::IncompleteResults>;
using NumericFailure = TypedError<ErrorKind::NumericFailure>;
using ParseError = TypedError<ErrorKind::ParseError>;
using SchemaError = TypedError<ErrorKind::SchemaError>;
using CapacityError = TypedError<ErrorKind::CapacityError>;
using ConfigError = TypedError<ErrorKind::ConfigError>;

} // namespace qsplit
