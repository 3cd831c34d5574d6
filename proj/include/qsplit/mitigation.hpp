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
#include <span>
#include <string_view>
#include <vector>

#include "qsplit/circuit.hpp"
#include "qsplit/observable.hpp"
#include "qsplit/simulator.hpp"

namespace qsplit::mitigation {

/// 0: none, 1: readout mitigation, 2: zero-noise extrapolation.
enum class Resilience { None = 0, Readout = 1, Zne = 2 };

Resilience resilience_from_int(int level);
int to_int(Resilience r) noexcept;

struct ReadoutCalibration {
    std::vector<ConfusionMatrix> matrices;

    /// Exact per-qubit maps of a noise model for a circuit of `width` qubits.
    static ReadoutCalibration from_noise(const NoiseModel &noise, int width);
    static ReadoutCalibration identity(int width);

    [[nodiscard]] int width() const noexcept { return static_cast<int>(matrices.size()); }
    /// Throws InvalidArgument for non-stochastic columns and NumericFailure for
    /// a matrix with |det| < 1e-9.
    void validate() const;
};

/// Applies (⊗ A_q)^-1, clips negatives, renormalizes.
Distribution mitigate_readout(const Distribution &d, const ReadoutCalibration &cal);

struct ZneSchedule {
    std::vector<int> scales{1, 3, 5};

    /// Odd, strictly increasing, starting at 1, at least two entries.
    void validate() const;
    /// Sum of scale factors: executions per mitigated circuit in gate-count units.
    [[nodiscard]] int cost_factor() const;
};

/// Replaces every gate G by G (G† G)^((scale-1)/2).
Circuit fold(const Circuit &c, int scale);

/// Least-squares line through (scale, value), evaluated at scale 0.
double extrapolate_to_zero(std::span<const int> scales, std::span<const double> values);

/// Noisy expectation at each scale, extrapolated to zero noise.
double zne_expectation(const Circuit &c, const PauliObservable &obs, const NoiseModel &noise,
                       const ZneSchedule &schedule);

/// Elementwise extrapolation of distributions measured at each scale.
Distribution zne_combine(std::span<const int> scales, std::span<const Distribution> runs);

/// Elementwise zero-noise extrapolation of outcome probabilities, clipped and
/// renormalized.
Distribution zne_distribution(const Circuit &c, const NoiseModel &noise, const ZneSchedule &schedule);

/// How a single bound circuit is executed.
struct RunSettings {
    NoiseModel noise;
    /// 0 means exact distributions.
    std::uint64_t shots = 0;
    Resilience resilience = Resilience::None;
    ZneSchedule zne;
};

/// Measures `bound` under the settings. Sampling seeds derive from `seed`
/// (and the scale factor under ZNE); readout mitigation uses the exact
/// calibration of the noise model at the circuit's width.
Distribution run(const Circuit &bound, const RunSettings &settings, std::uint64_t seed);

} // namespace qsplit::mitigation
