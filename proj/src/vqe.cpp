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

#include "qsplit/vqe.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>
#include <string>

#include "qsplit/errors.hpp"
#include "qsplit/rng.hpp"

namespace qsplit::vqe {

void IsingChainHamiltonian::validate() const {
    if (n < 2) {
        throw InvalidArgument("the chain needs at least 2 qubits");
    }
}

double IsingChainHamiltonian::energy(std::uint64_t z) const {
    double e = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const bool differ = (((z >> i) ^ (z >> (i + 1))) & 1ULL) != 0;
        e += differ ? -jz : jz;
    }
    return e;
}

PauliObservable IsingChainHamiltonian::observable() const {
    validate();
    PauliObservable obs(n);
    for (int i = 0; i + 1 < n; ++i) {
        std::string s(static_cast<std::size_t>(n), 'I');
        s[static_cast<std::size_t>(n - 1 - i)] = 'Z';
        s[static_cast<std::size_t>(n - 2 - i)] = 'Z';
        obs.add(jz, s);
    }
    return obs;
}

double expectation_from_distribution(const Distribution &d, const IsingChainHamiltonian &h) {
    h.validate();
    if (d.bits() != h.n) {
        throw InvalidArgument("distribution over " + std::to_string(d.bits()) + " bits for a " + std::to_string(h.n) +
                              "-site chain");
    }
    const auto p = d.probabilities();
    double sum = 0.0;
    for (std::uint64_t z = 0; z < p.size(); ++z) {
        sum += p[z] * h.energy(z);
    }
    return sum;
}

GroundTruth ground_truth(const IsingChainHamiltonian &h) {
    h.validate();
    if (h.n > kMaxStatevectorQubits) {
        throw ResourceLimit("ground truth enumeration is capped at " + std::to_string(kMaxStatevectorQubits) +
                            " qubits");
    }
    GroundTruth gt;
    gt.energy = std::numeric_limits<double>::infinity();
    for (std::uint64_t z = 0; z < (1ULL << h.n); ++z) {
        const double e = h.energy(z);
        if (e < gt.energy) {
            gt.energy = e;
            gt.states.clear();
        }
        if (e == gt.energy) {
            gt.states.push_back(z);
        }
    }
    return gt;
}

std::string_view to_string(Mode m) noexcept { return m == Mode::Cut ? "cut" : "uncut"; }

Mode mode_from_string(std::string_view s) {
    if (s == "cut") {
        return Mode::Cut;
    }
    if (s == "uncut") {
        return Mode::Uncut;
    }
    throw InvalidArgument("mode must be 'cut' or 'uncut', got '" + std::string(s) + "'");
}

Evaluator::Evaluator(const VqeConfig &config)
    : config_(config), ansatz_(build_real_amplitudes(config.hamiltonian.n, config.reps)) {
    config_.hamiltonian.validate();
    config_.noise.validate();
    if (config_.resilience == mitigation::Resilience::Zne) {
        config_.zne.validate();
    }
    if (config_.mode == Mode::Cut) {
        const auto t0 = std::chrono::steady_clock::now();
        const cutting::CutPlan plan = config_.plan ? *config_.plan : cutting::mid_chain_plan(ansatz_);
        cut_ = cutting::cut(ansatz_, plan);
        subexperiments_ = cutting::expand(*cut_);
        classical_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
}

Distribution Evaluator::run_circuit(const Circuit &bound, std::uint64_t seed) const {
    return mitigation::run(bound, {config_.noise, config_.shots, config_.resilience, config_.zne}, seed);
}

Distribution Evaluator::distribution(std::span<const double> theta, std::uint64_t evaluation) const {
    if (!cut_) {
        return run_circuit(qsplit::bind(ansatz_, theta), derive_seed(config_.seed, evaluation, 0));
    }
    std::map<std::size_t, Distribution> results;
    for (const auto &sub : subexperiments_) {
        results.emplace(sub.id, run_circuit(qsplit::bind(sub.circuit, theta), derive_seed(config_.seed, evaluation, sub.id)));
    }
    const auto t0 = std::chrono::steady_clock::now();
    Distribution d = cutting::reconstruct(*cut_, results);
    classical_seconds_ += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return d;
}

double Evaluator::expectation(std::span<const double> theta, std::uint64_t evaluation) const {
    return expectation_from_distribution(distribution(theta, evaluation), config_.hamiltonian);
}

std::vector<std::vector<Circuit>> Evaluator::circuits_per_evaluation() const {
    if (!cut_) {
        return {{ansatz_}};
    }
    std::vector<std::vector<Circuit>> groups(cut_->fragments.size());
    for (const auto &sub : subexperiments_) {
        groups[sub.fragment].push_back(sub.circuit);
    }
    return groups;
}

VqeRun run_vqe(const VqeConfig &config) {
    if (config.max_iters < 1) {
        throw InvalidArgument("max_iters must be at least 1");
    }
    const Evaluator eval(config);
    const auto &s = config.spsa;
    const std::size_t m = eval.ansatz().num_params();
    Rng rng(config.seed);
    std::vector<double> theta(m);
    for (auto &t : theta) {
        t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    const double stability = s.stability_fraction * config.max_iters;

    VqeRun run;
    run.config = config;
    double best = std::numeric_limits<double>::infinity();
    double anchor = best;
    int last_improvement = 0;
    std::vector<double> delta(m);
    std::vector<double> probe(m);
    for (int k = 0; k < config.max_iters; ++k) {
        const double ak = s.a / std::pow(k + 1 + stability, s.alpha);
        const double ck = s.c / std::pow(k + 1, s.gamma);
        for (auto &d : delta) {
            d = rng.sign();
        }
        for (std::size_t i = 0; i < m; ++i) {
            probe[i] = theta[i] + ck * delta[i];
        }
        const double y_plus = eval.expectation(probe, 2 * static_cast<std::uint64_t>(k));
        for (std::size_t i = 0; i < m; ++i) {
            probe[i] = theta[i] - ck * delta[i];
        }
        const double y_minus = eval.expectation(probe, 2 * static_cast<std::uint64_t>(k) + 1);

        IterationRecord rec;
        rec.iteration = k;
        rec.theta = theta;
        rec.y_plus = y_plus;
        rec.y_minus = y_minus;
        rec.expectation = 0.5 * (y_plus + y_minus);
        best = std::min(best, rec.expectation);
        rec.best = best;
        run.trace.push_back(std::move(rec));

        const double slope = (y_plus - y_minus) / (2.0 * ck);
        for (std::size_t i = 0; i < m; ++i) {
            theta[i] -= ak * slope / delta[i];
        }

        if (best < anchor - s.plateau_tolerance) {
            anchor = best;
            last_improvement = k;
        }
        if (k - last_improvement >= s.plateau_window) {
            run.plateau_stop = true;
            break;
        }
    }
    run.final_theta = theta;
    const std::size_t tail = std::min<std::size_t>(run.trace.size(), static_cast<std::size_t>(std::max(1, s.tail_window)));
    run.converged = std::numeric_limits<double>::infinity();
    for (std::size_t i = run.trace.size() - tail; i < run.trace.size(); ++i) {
        run.converged = std::min(run.converged, run.trace[i].expectation);
    }
    run.classical_seconds = eval.classical_seconds();
    return run;
}

} // namespace qsplit::vqe
