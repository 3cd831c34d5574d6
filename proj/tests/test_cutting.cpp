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

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <complex>
#include <numeric>
#include <vector>

#include "oracle.hpp"
#include "random_circuits.hpp"
#include "qsplit/circuit.hpp"
#include "qsplit/cutting.hpp"
#include "qsplit/errors.hpp"
#include "qsplit/rng.hpp"
#include "qsplit/simulator.hpp"

using namespace qsplit;
using namespace qsplit::cutting;

namespace {

std::vector<double> random_theta(std::size_t m, Rng &rng) {
    std::vector<double> t(m);
    for (auto &v : t) {
        v = rng.uniform(0.0, 6.283185307179586);
    }
    return t;
}

double reconstruction_error(const Circuit &c, const CutPlan &plan) {
    const CutCircuit cc = cut(c, plan);
    const auto subs = expand(cc);
    const Distribution r = reconstruct(cc, testing::run_exact(subs));
    return oracle::tv({r.probabilities().begin(), r.probabilities().end()}, oracle::probabilities(c));
}

std::size_t total_width(const CutCircuit &cc) {
    std::size_t w = 0;
    for (const auto &f : cc.fragments) {
        w += static_cast<std::size_t>(f.width());
    }
    return w;
}

} // namespace

TEST_CASE("three-qubit chain splits into two 2-qubit fragments") {
    const Circuit ansatz = build_real_amplitudes(3, 1);
    const CutPlan plan = mid_chain_plan(ansatz);
    REQUIRE(plan.size() == 1);
    CHECK(plan.cuts[0].wire == 1);
    const CutCircuit cc = cut(ansatz, plan);
    REQUIRE(cc.fragments.size() == 2);
    CHECK(cc.fragments[0].width() == 2);
    CHECK(cc.fragments[1].width() == 2);
    CHECK(total_width(cc) == 4);
    CHECK(cc.fragments[0].cut_outputs.size() == 1);
    CHECK(cc.fragments[1].cut_inputs.size() == 1);
    CHECK(expand(cc).size() == 7);

    Rng rng(3);
    for (int trial = 0; trial < 5; ++trial) {
        const Circuit bound = qsplit::bind(ansatz, random_theta(6, rng));
        CHECK(reconstruction_error(bound, plan) < 1e-9);
    }
}

TEST_CASE("six-qubit chain splits into 4 + 3") {
    const Circuit ansatz = build_real_amplitudes(6, 1);
    const CutPlan plan = mid_chain_plan(ansatz);
    const CutCircuit cc = cut(ansatz, plan);
    REQUIRE(cc.fragments.size() == 2);
    CHECK(cc.fragments[0].width() == 4);
    CHECK(cc.fragments[1].width() == 3);
    const auto subs = expand(cc);
    CHECK(subs.size() == 7);
    CHECK(reconstruction_terms(plan.size()).size() == 4);
    // Fragment circuits keep the uncut parameter list and remain bindable.
    Rng rng(8);
    const auto theta = random_theta(12, rng);
    for (const auto &s : subs) {
        CHECK(qsplit::bind(s.circuit, theta).is_bound());
    }
    CHECK(reconstruction_error(qsplit::bind(ansatz, theta), plan) < 1e-9);
}

TEST_CASE("zero cuts leave the circuit intact") {
    Rng rng(4);
    const Circuit c = testing::random_circuit(4, 20, rng);
    const CutCircuit cc = cut(c, CutPlan{});
    REQUIRE(cc.fragments.size() == 1);
    CHECK(cc.fragments[0].circuit == c);
    const auto subs = expand(cc);
    REQUIRE(subs.size() == 1);
    const Distribution d = measure(c, NoiseModel::noiseless());
    const Distribution r = reconstruct(cc, {{0, d}});
    CHECK(total_variation(r, d) < 1e-15);
}

TEST_CASE("two cuts between the same fragments") {
    Circuit c(2);
    c.append(Gate::h(0)).append(Gate::cnot(0, 1)).append(Gate::ry(0, 0.4)).append(Gate::ry(1, 1.3));
    c.append(Gate::cnot(1, 0)).append(Gate::rz(0, 0.2)).append(Gate::h(1));
    const CutPlan plan{{{2, 0}, {2, 1}}};
    const CutCircuit cc = cut(c, plan);
    REQUIRE(cc.fragments.size() == 2);
    CHECK(cc.fragments[0].subexperiment_count() == 9);
    CHECK(cc.fragments[1].subexperiment_count() == 16);
    CHECK(expand(cc).size() == 25);
    CHECK(total_width(cc) == 4);
    CHECK(reconstruction_error(c, plan) < 1e-9);
}

TEST_CASE("invalid cut plans") {
    Circuit chain(2);
    chain.append(Gate::h(0)).append(Gate::cnot(0, 1)).append(Gate::cnot(0, 1));
    SUBCASE("cut before the first gate of a wire") {
        CHECK_THROWS_AS(cut(chain, CutPlan{{{1, 1}}}), InvalidCut);
    }
    SUBCASE("cut after the last gate of a wire") {
        CHECK_THROWS_AS(cut(chain, CutPlan{{{3, 0}}}), InvalidCut);
    }
    SUBCASE("duplicate cut") {
        CHECK_THROWS_AS(cut(chain, CutPlan{{{1, 0}, {1, 0}}}), InvalidCut);
    }
    SUBCASE("both sides stay connected") {
        CHECK_THROWS_AS(cut(chain, CutPlan{{{2, 0}}}), InvalidCut);
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(cut(chain, CutPlan{{{1, 2}}}), InvalidCut);
        CHECK_THROWS_AS(cut(chain, CutPlan{{{9, 0}}}), InvalidCut);
    }
    SUBCASE("fragments feeding each other") {
        Circuit c(4);
        c.append(Gate::cnot(0, 2)).append(Gate::cnot(1, 3)).append(Gate::cnot(3, 0)).append(Gate::cnot(2, 1));
        CHECK_THROWS_AS(cut(c, CutPlan{{{2, 0}, {3, 1}}}), InvalidCut);
    }
}

TEST_CASE("preparation weights reproduce the Pauli operators") {
    using M = oracle::Mat;
    const double s = 1.0 / std::sqrt(2.0);
    const std::complex<double> i(0.0, 1.0);
    oracle::Vec zero(2), one(2), plus(2), plus_i(2);
    zero << 1.0, 0.0;
    one << 0.0, 1.0;
    plus << s, s;
    plus_i << s, s * i;
    const std::vector<std::pair<Prep, oracle::Vec>> states{
        {Prep::Zero, zero}, {Prep::One, one}, {Prep::Plus, plus}, {Prep::PlusI, plus_i}};
    M x(2, 2), y(2, 2), z(2, 2);
    x << 0.0, 1.0, 1.0, 0.0;
    y << 0.0, -i, i, 0.0;
    z << 1.0, 0.0, 0.0, -1.0;
    const std::vector<std::pair<Pauli, M>> paulis{
        {Pauli::I, M::Identity(2, 2)}, {Pauli::X, x}, {Pauli::Y, y}, {Pauli::Z, z}};
    for (const auto &[label, op] : paulis) {
        M sum = M::Zero(2, 2);
        for (const auto &[prep, v] : states) {
            sum += preparation_weight(label, prep) * (v * v.adjoint());
        }
        CHECK((sum - op).norm() < 1e-12);
    }
    // The gates prepended to a downstream subexperiment realize its state.
    const Circuit ansatz = build_real_amplitudes(3, 1);
    const CutCircuit cc = cut(qsplit::bind(ansatz, std::vector<double>(6, 0.3)), mid_chain_plan(ansatz));
    const auto &down = cc.fragments[1];
    for (const auto &sub : expand(cc)) {
        if (sub.fragment != 1) {
            continue;
        }
        const auto &gates = sub.circuit.gates();
        const std::size_t prefix = gates.size() - down.circuit.gates().size();
        Circuit prep(1);
        for (std::size_t g = 0; g < prefix; ++g) {
            Gate one = gates[g];
            CHECK(one.qubits[0] == down.cut_inputs[0]);
            one.qubits[0] = 0;
            prep.append(one);
        }
        const auto it = std::find_if(states.begin(), states.end(),
                                     [&](const auto &s) { return s.first == sub.preps[0]; });
        const oracle::Vec psi = oracle::unitary(prep).col(0);
        CHECK(std::abs(it->second.dot(psi)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("reconstruction terms") {
    for (std::size_t k = 0; k <= 3; ++k) {
        const auto terms = reconstruction_terms(k);
        CHECK(terms.size() == static_cast<std::size_t>(1) << (2 * k));
        for (const auto &t : terms) {
            CHECK(t.labels.size() == k);
            CHECK(t.coefficient == doctest::Approx(std::pow(0.5, static_cast<double>(k))));
        }
    }
}

TEST_CASE("random corpus reconstructs exactly") {
    Rng rng(2024);
    for (int n = 3; n <= 6; ++n) {
        for (std::size_t k = 0; k <= 2; ++k) {
            const auto cs = testing::random_cut_case(n, k, rng);
            CHECK(total_width(cs.cut) == static_cast<std::size_t>(n) + k);
            std::size_t non_input = 0;
            for (const auto &f : cs.cut.fragments) {
                non_input += static_cast<std::size_t>(f.width()) - f.cut_inputs.size();
            }
            CHECK(non_input == static_cast<std::size_t>(n));
            CHECK(reconstruction_error(cs.circuit, cs.plan) < 1e-9);
        }
    }
}

TEST_CASE("results are keyed by id, not order") {
    const Circuit ansatz = build_real_amplitudes(3, 1);
    Rng rng(9);
    const Circuit bound = qsplit::bind(ansatz, random_theta(6, rng));
    const CutCircuit cc = cut(bound, mid_chain_plan(bound));
    auto subs = expand(cc);
    std::reverse(subs.begin(), subs.end());
    const auto results = testing::run_exact(subs);
    const Distribution r = reconstruct(cc, results);
    CHECK(oracle::tv({r.probabilities().begin(), r.probabilities().end()}, oracle::probabilities(bound)) < 1e-9);

    auto missing = results;
    missing.erase(3);
    CHECK_THROWS_AS(reconstruct(cc, missing), IncompleteResults);

    auto mixed = results;
    for (auto &[id, d] : mixed) {
        d = sample(d, id == 0 ? 100 : 200, id);
    }
    CHECK_THROWS_AS(reconstruct(cc, mixed), InvalidArgument);
}

TEST_CASE("finite-shot error shrinks with shots") {
    const Circuit ansatz = build_real_amplitudes(3, 1);
    Rng rng(31);
    const Circuit bound = qsplit::bind(ansatz, random_theta(6, rng));
    const CutCircuit cc = cut(bound, mid_chain_plan(bound));
    const auto subs = expand(cc);
    const auto exact = testing::run_exact(subs);
    const auto truth = oracle::probabilities(bound);
    auto median_error = [&](std::uint64_t shots) {
        std::vector<double> errs;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            std::map<std::size_t, Distribution> sampled;
            for (const auto &[id, d] : exact) {
                sampled.emplace(id, sample(d, shots, derive_seed(seed, id)));
            }
            const Distribution r = reconstruct(cc, sampled);
            CHECK(r.is_exact());
            errs.push_back(oracle::tv({r.probabilities().begin(), r.probabilities().end()}, truth));
        }
        std::nth_element(errs.begin(), errs.begin() + 10, errs.end());
        return errs[10];
    };
    CHECK(median_error(100000) < median_error(1000));
}

TEST_CASE("post-processing cost grows with cut count") {
    Rng rng(77);
    std::vector<double> seconds;
    for (std::size_t k = 0; k <= 2; ++k) {
        const auto cs = testing::random_cut_case(5, k, rng);
        const auto results = testing::run_exact(expand(cs.cut));
        double best = 1e9;
        for (int rep = 0; rep < 5; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            for (int i = 0; i < 50; ++i) {
                (void)reconstruct(cs.cut, results);
            }
            best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        }
        seconds.push_back(best);
    }
    CHECK(seconds[0] < seconds[1]);
    CHECK(seconds[1] < seconds[2]);
}

TEST_CASE("manifest records") {
    const Circuit ansatz = build_real_amplitudes(3, 1);
    const auto subs = expand(cut(ansatz, mid_chain_plan(ansatz)));
    const auto m = manifest(subs);
    REQUIRE(m.size() == 7);
    CHECK(m[0]["fragment_id"] == 0);
    CHECK(m[0]["prep"].empty());
    CHECK(m[0]["basis"][0] == "X");
    CHECK(m[3]["fragment_id"] == 1);
    CHECK(m[3]["prep"][0] == "0");
    CHECK(m[6]["prep"][0] == "+i");
    const Circuit parsed = Circuit::from_text(m[6]["circuit_text"].get<std::string>());
    CHECK(parsed.gates() == subs[6].circuit.gates());
    CHECK(parsed.params() == subs[6].circuit.params());
}
