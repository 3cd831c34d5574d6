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

#include <cstdint>
#include <string>
#include <vector>

#include "qsplit/simulator.hpp"

namespace qsplit {

/// Weighted sum of Pauli strings. A string is written like a bitstring: its
/// first character acts on the highest qubit.
class PauliObservable {
  public:
    struct Term {
        double coefficient = 1.0;
        std::string paulis;
    };

    explicit PauliObservable(int width, std::vector<Term> terms = {});

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] const std::vector<Term> &terms() const noexcept { return terms_; }
    void add(double coefficient, std::string paulis);

    /// True when every term is a product of I and Z, so the expectation can be
    /// read off a Z-basis distribution.
    [[nodiscard]] bool is_diagonal() const;
    /// Eigenvalue on computational basis state `outcome`; diagonal only.
    [[nodiscard]] double eigenvalue(std::uint64_t outcome) const;
    /// Σ_z p(z) E(z). Throws InvalidArgument on width mismatch or a
    /// non-diagonal observable.
    [[nodiscard]] double expectation(const Distribution &d) const;

  private:
    int width_;
    std::vector<Term> terms_;
};

} // namespace qsplit
