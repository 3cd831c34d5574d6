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
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qsplit/circuit.hpp"
#include "qsplit/cutting.hpp"
#include "qsplit/mitigation.hpp"
#include "qsplit/observable.hpp"
#include "qsplit/simulator.hpp"

namespace qsplit::vqe {

/// Nearest-neighbour ZZ chain, H = J_z Σ_i Z_i Z_{i+1} on an open chain.
struct IsingChainHamiltonian {
    int n = 6;
    double jz = 1.0;

    void validate() const;
    /// Energy of computational basis state `z`.
    [[nodiscard]] double energy(std::uint64_t z) const;
    [[nodiscard]] PauliObservable observable() const;
};

double expectation_from_distribution(const Distribution &d, const IsingChainHamiltonian &h);

struct GroundTruth {
    double energy = 0.0;
    std::vector<std::uint64_t> states;
};

/// Exhaustive minimum over all 2^n basis states (H is diagonal).
GroundTruth ground_truth(const IsingChainHamiltonian &h);

enum class Mode { Uncut, Cut };
std::string_view to_string(Mode m) noexcept;
Mode mode_from_string(std::string_view s);

struct SpsaSettings {
    double a = 0.3;
    double c = 0.1;
    double alpha = 0.602;
    double gamma = 0.101;
    /// Stability constant as a fraction of max_iters.
    double stability_fraction = 0.1;
    int plateau_window = 50;
    double plateau_tolerance = 1e-3;
    /// Trace entries the converged value is taken over.
    int tail_window = 10;
};

struct VqeConfig {
    IsingChainHamiltonian hamiltonian;
    int reps = 1;
    Mode mode = Mode::Uncut;
    /// 0 means exact distributions.
    std::uint64_t shots = 0;
    mitigation::Resilience resilience = mitigation::Resilience::None;
    mitigation::ZneSchedule zne;
    NoiseModel noise;
    std::uint64_t seed = 0;
    int max_iters = 500;
    SpsaSettings spsa;
    /// Defaults to the mid-chain cut.
    std::optional<cutting::CutPlan> plan;
};

/// Estimates ⟨H⟩ for a parameter vector with the configured mode, shots,
/// noise and resilience. Shot sampling draws from seeds derived from the run
/// seed and a caller-supplied evaluation index.
class Evaluator {
  public:
    explicit Evaluator(const VqeConfig &config);

    [[nodiscard]] const Circuit &ansatz() const noexcept { return ansatz_; }
    [[nodiscard]] const std::optional<cutting::CutCircuit> &cut_circuit() const noexcept { return cut_; }

    /// Distribution of the uncut circuit's outcomes (reconstructed in cut mode).
    [[nodiscard]] Distribution distribution(std::span<const double> theta, std::uint64_t evaluation) const;
    [[nodiscard]] double expectation(std::span<const double> theta, std::uint64_t evaluation) const;

    /// Circuits run per evaluation, grouped by fragment (one group when uncut).
    [[nodiscard]] std::vector<std::vector<Circuit>> circuits_per_evaluation() const;

    /// Wall-clock seconds spent in cutting and reconstruction so far.
    [[nodiscard]] double classical_seconds() const noexcept { return classical_seconds_; }

  private:
    [[nodiscard]] Distribution run_circuit(const Circuit &bound, std::uint64_t seed) const;

    VqeConfig config_;
    Circuit ansatz_;
    std::optional<cutting::CutCircuit> cut_;
    std::vector<cutting::Subexperiment> subexperiments_;
    mutable double classical_seconds_ = 0.0;
};

struct IterationRecord {
    int iteration = 0;
    std::vector<double> theta;
    double y_plus = 0.0;
    double y_minus = 0.0;
    /// (y+ + y-) / 2, the estimate reported for the iteration.
    double expectation = 0.0;
    double best = 0.0;
};

struct VqeRun {
    VqeConfig config;
    std::vector<IterationRecord> trace;
    std::vector<double> final_theta;
    double converged = 0.0;
    bool plateau_stop = false;
    double classical_seconds = 0.0;
};

VqeRun run_vqe(const VqeConfig &config);

} // namespace qsplit::vqe
