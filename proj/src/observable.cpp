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

#include "qsplit/observable.hpp"

#include "qsplit/errors.hpp"

namespace qsplit {

PauliObservable::PauliObservable(int width, std::vector<Term> terms) : width_(width) {
    if (width < 1) {
        throw InvalidArgument("observable width must be positive");
    }
    for (auto &t : terms) {
        add(t.coefficient, std::move(t.paulis));
    }
}

void PauliObservable::add(double coefficient, std::string paulis) {
    if (paulis.size() != static_cast<std::size_t>(width_)) {
        throw InvalidArgument("Pauli string '" + paulis + "' does not have length " + std::to_string(width_));
    }
    for (char ch : paulis) {
        if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z') {
            throw InvalidArgument("bad Pauli letter in '" + paulis + "'");
        }
    }
    terms_.push_back({coefficient, std::move(paulis)});
}

bool PauliObservable::is_diagonal() const {
    for (const auto &t : terms_) {
        if (t.paulis.find_first_of("XY") != std::string::npos) {
            return false;
        }
    }
    return true;
}

double PauliObservable::eigenvalue(std::uint64_t outcome) const {
    double e = 0.0;
    for (const auto &t : terms_) {
        int parity = 0;
        for (int q = 0; q < width_; ++q) {
            if (t.paulis[static_cast<std::size_t>(width_ - 1 - q)] == 'Z') {
                parity ^= static_cast<int>((outcome >> q) & 1ULL);
            }
        }
        e += parity != 0 ? -t.coefficient : t.coefficient;
    }
    return e;
}

double PauliObservable::expectation(const Distribution &d) const {
    if (d.bits() != width_) {
        throw InvalidArgument("distribution over " + std::to_string(d.bits()) + " bits, observable over " +
                              std::to_string(width_));
    }
    if (!is_diagonal()) {
        throw InvalidArgument("observable has X or Y terms; a Z-basis distribution cannot estimate it");
    }
    const auto p = d.probabilities();
    double sum = 0.0;
    for (std::uint64_t z = 0; z < p.size(); ++z) {
        if (p[z] != 0.0) {
            sum += p[z] * eigenvalue(z);
        }
    }
    return sum;
}

} // namespace qsplit
