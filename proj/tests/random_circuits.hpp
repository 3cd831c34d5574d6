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

#include <map>
#include <optional>

#include "qsplit/circuit.hpp"
#include "qsplit/cutting.hpp"
#include "qsplit/errors.hpp"
#include "qsplit/simulator.hpp"
#include "qsplit/rng.hpp"

namespace testing {

inline qsplit::Circuit random_circuit(int n, int gates, qsplit::Rng &rng) {
    using namespace qsplit;
    Circuit c(n);
    for (int i = 0; i < gates; ++i) {
        const auto pick = rng.next() % 7;
        const int q = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
        switch (pick) {
        case 0:
            c.append(Gate::ry(q, rng.uniform(0, 6.3)));
            break;
        case 1:
            c.append(Gate::rz(q, rng.uniform(0, 6.3)));
            break;
        case 2:
            c.append(Gate::h(q));
            break;
        case 3:
            c.append(Gate::s(q));
            break;
        case 4:
            c.append(Gate::sdg(q));
            break;
        case 5:
            c.append(Gate::x(q));
            break;
        default: {
            const int t = static_cast<int>((static_cast<std::uint64_t>(q) + 1 + rng.next() % static_cast<std::uint64_t>(n - 1)) %
                                           static_cast<std::uint64_t>(n));
            c.append(Gate::cnot(q, t));
        }
        }
    }
    return c;
}

struct CutCase {
    qsplit::Circuit circuit;
    qsplit::cutting::CutPlan plan;
    qsplit::cutting::CutCircuit cut;
};

/// Random circuit with `cuts` random wire cuts that form a valid plan. Draws
/// circuits and cut points until the cutter accepts one.
inline CutCase random_cut_case(int n, std::size_t cuts, qsplit::Rng &rng) {
    using namespace qsplit;
    for (;;) {
        Circuit c = random_circuit(n, 4 * n, rng);
        cutting::CutPlan plan;
        for (std::size_t k = 0; k < cuts; ++k) {
            const auto pos = 1 + rng.next() % (c.gates().size() - 1);
            const int wire = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
            plan.cuts.push_back({pos, wire});
        }
        try {
            auto cc = cutting::cut(c, plan);
            return {std::move(c), std::move(plan), std::move(cc)};
        } catch (const InvalidCut &) {
        }
    }
}

/// Exact distributions for every subexperiment, keyed by id.
inline std::map<std::size_t, qsplit::Distribution>
run_exact(const std::vector<qsplit::cutting::Subexperiment> &subs,
          const qsplit::NoiseModel &noise = qsplit::NoiseModel::noiseless()) {
    std::map<std::size_t, qsplit::Distribution> out;
    for (const auto &s : subs) {
        out.emplace(s.id, qsplit::measure(s.circuit, noise));
    }
    return out;
}

} // namespace testing
