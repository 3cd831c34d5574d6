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

#include "qsplit/mitigation.hpp"

#include <cmath>
#include <string>

#include "qsplit/errors.hpp"
#include "qsplit/rng.hpp"

namespace qsplit::mitigation {

Resilience resilience_from_int(int level) {
    switch (level) {
    case 0:
        return Resilience::None;
    case 1:
        return Resilience::Readout;
    case 2:
        return Resilience::Zne;
    default:
        throw InvalidArgument("resilience level must be 0, 1 or 2, got " + std::to_string(level));
    }
}

int to_int(Resilience r) noexcept { return static_cast<int>(r); }

ReadoutCalibration ReadoutCalibration::from_noise(const NoiseModel &noise, int width) {
    return {noise.readout_maps(width)};
}

ReadoutCalibration ReadoutCalibration::identity(int width) {
    return {std::vector<ConfusionMatrix>(static_cast<std::size_t>(width))};
}

void ReadoutCalibration::validate() const {
    for (const auto &m : matrices) {
        m.validate();
        if (std::abs(m.determinant()) < 1e-9) {
            throw NumericFailure("readout calibration matrix is singular");
        }
    }
}

Distribution mitigate_readout(const Distribution &d, const ReadoutCalibration &cal) {
    if (cal.width() != d.bits()) {
        throw InvalidArgument("calibration covers " + std::to_string(cal.width()) + " qubits, distribution " +
                              std::to_string(d.bits()));
    }
    cal.validate();
    std::vector<ConfusionMatrix> inverses;
    for (const auto &m : cal.matrices) {
        const double det = m.determinant();
        ConfusionMatrix inv;
        inv.m = {{{m.m[1][1] / det, -m.m[0][1] / det}, {-m.m[1][0] / det, m.m[0][0] / det}}};
        inverses.push_back(inv);
    }
    // The inverse maps are not stochastic, so apply them without validation.
    std::vector<double> p(d.probabilities().begin(), d.probabilities().end());
    for (int q = 0; q < d.bits(); ++q) {
        const auto &a = inverses[static_cast<std::size_t>(q)].m;
        const std::uint64_t bit = 1ULL << q;
        for (std::uint64_t z = 0; z < p.size(); ++z) {
            if ((z & bit) != 0) {
                continue;
            }
            const double p0 = p[z];
            const double p1 = p[z | bit];
            p[z] = a[0][0] * p0 + a[0][1] * p1;
            p[z | bit] = a[1][0] * p0 + a[1][1] * p1;
        }
    }
    return {d.bits(), clip_and_normalize(std::move(p)), d.shots()};
}

void ZneSchedule::validate() const {
    if (scales.size() < 2) {
        throw InvalidArgument("zero-noise extrapolation needs at least two scale factors");
    }
    if (scales.front() != 1) {
        throw InvalidArgument("the first scale factor must be 1");
    }
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (scales[i] < 1 || scales[i] % 2 == 0) {
            throw InvalidArgument("scale factors must be odd positive integers");
        }
        if (i > 0 && scales[i] <= scales[i - 1]) {
            throw InvalidArgument("scale factors must be strictly increasing");
        }
    }
}

int ZneSchedule::cost_factor() const {
    int sum = 0;
    for (int s : scales) {
        sum += s;
    }
    return sum;
}

Circuit fold(const Circuit &c, int scale) {
    if (scale < 1 || scale % 2 == 0) {
        throw InvalidArgument("fold scale must be an odd positive integer");
    }
    Circuit out(c.width(), c.params());
    for (const auto &g : c.gates()) {
        out.append(g);
        if (g.kind == GateKind::Measure) {
            continue;
        }
        for (int k = 0; k < (scale - 1) / 2; ++k) {
            out.append(g.inverse());
            out.append(g);
        }
    }
    out.set_layer_count(c.layer_count() * scale);
    return out;
}

double extrapolate_to_zero(std::span<const int> scales, std::span<const double> values) {
    if (scales.size() != values.size() || scales.size() < 2) {
        throw InvalidArgument("extrapolation needs matching scale and value lists of length >= 2");
    }
    const double n = static_cast<double>(scales.size());
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < scales.size(); ++i) {
        const double x = scales[i];
        sx += x;
        sy += values[i];
        sxx += x * x;
        sxy += x * values[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw NumericFailure("scale factors are all equal");
    }
    const double slope = (n * sxy - sx * sy) / denom;
    return (sy - slope * sx) / n;
}

double zne_expectation(const Circuit &c, const PauliObservable &obs, const NoiseModel &noise,
                       const ZneSchedule &schedule) {
    schedule.validate();
    std::vector<double> values;
    for (int s : schedule.scales) {
        values.push_back(obs.expectation(measure(fold(c, s), noise)));
    }
    return extrapolate_to_zero(schedule.scales, values);
}

Distribution zne_combine(std::span<const int> scales, std::span<const Distribution> runs) {
    if (scales.size() != runs.size() || runs.empty()) {
        throw InvalidArgument("one distribution per scale factor is required");
    }
    const int bits = runs.front().bits();
    std::vector<double> out(runs.front().probabilities().size());
    std::vector<double> values(runs.size());
    for (std::size_t z = 0; z < out.size(); ++z) {
        for (std::size_t r = 0; r < runs.size(); ++r) {
            if (runs[r].bits() != bits) {
                throw InvalidArgument("distributions to extrapolate differ in width");
            }
            values[r] = runs[r][z];
        }
        out[z] = extrapolate_to_zero(scales, values);
    }
    return {bits, clip_and_normalize(std::move(out))};
}

Distribution zne_distribution(const Circuit &c, const NoiseModel &noise, const ZneSchedule &schedule) {
    schedule.validate();
    std::vector<Distribution> runs;
    for (int s : schedule.scales) {
        runs.push_back(measure(fold(c, s), noise));
    }
    return zne_combine(schedule.scales, runs);
}

Distribution run(const Circuit &bound, const RunSettings &settings, std::uint64_t seed) {
    if (settings.resilience == Resilience::Zne) {
        std::vector<Distribution> runs;
        for (int s : settings.zne.scales) {
            Distribution d = measure(fold(bound, s), settings.noise);
            if (settings.shots > 0) {
                d = sample(d, settings.shots, derive_seed(seed, static_cast<std::uint64_t>(s)));
            }
            runs.push_back(std::move(d));
        }
        return zne_combine(settings.zne.scales, runs);
    }
    Distribution d = measure(bound, settings.noise);
    if (settings.shots > 0) {
        d = sample(d, settings.shots, seed);
    }
    if (settings.resilience == Resilience::Readout) {
        d = mitigate_readout(d, ReadoutCalibration::from_noise(settings.noise, bound.width()));
    }
    return d;
}

} // namespace qsplit::mitigation
