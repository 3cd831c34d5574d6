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

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsplit/circuit.hpp"

namespace qsplit {

using Complex = std::complex<double>;

/// Largest register simulated exactly.
inline constexpr int kMaxStatevectorQubits = 14;
/// Largest register simulated as a density matrix (4^7 entries).
inline constexpr int kMaxDensityQubits = 7;

/// Outcome index convention used everywhere: bit q of an outcome index is the
/// measured value of qubit q (little-endian). When printed as a string the
/// highest qubit comes first, so index 0b000001 reads "000001".
std::string bitstring(std::uint64_t index, int bits);
std::uint64_t parse_bitstring(const std::string &s);

class Statevector {
  public:
    explicit Statevector(int width);

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] double norm() const;
    [[nodiscard]] std::vector<double> probabilities() const;

    /// Applies a bound gate. Measurements are ignored.
    void apply(const Gate &g);

  private:
    int width_;
    std::vector<Complex> amps_;
};

/// Density matrix stored as a 2n-qubit vector: entry (r, c) lives at index
/// r | (c << n), so U ρ U† is U on the row bits and conj(U) on the column bits.
class DensityMatrix {
  public:
    explicit DensityMatrix(int width);

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] Complex at(std::uint64_t row, std::uint64_t col) const;
    [[nodiscard]] double trace() const;
    [[nodiscard]] std::vector<double> diagonal() const;
    /// Largest |ρ - ρ†| entry.
    [[nodiscard]] double hermiticity_error() const;
    [[nodiscard]] double min_eigenvalue() const;

    void apply(const Gate &g);
    /// ρ -> (1-p) ρ + p (I/d ⊗ Tr_Q ρ) on the given qubits.
    void depolarize(std::span<const int> qubits, double p);

  private:
    int width_;
    std::vector<Complex> data_;
};

/// Column-stochastic readout map: m[i][j] = P(read i | true j).
struct ConfusionMatrix {
    std::array<std::array<double, 2>, 2> m{{{1.0, 0.0}, {0.0, 1.0}}};

    static ConfusionMatrix identity() { return {}; }
    /// p01 = P(read 1 | true 0), p10 = P(read 0 | true 1).
    static ConfusionMatrix from_flips(double p01, double p10);

    [[nodiscard]] double determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    [[nodiscard]] bool is_identity() const { return m[0][1] == 0.0 && m[1][0] == 0.0; }
    void validate() const;

    friend bool operator==(const ConfusionMatrix &, const ConfusionMatrix &) = default;
};

/// Parametric noise: depolarizing after each gate on that gate's qubits plus a
/// classical readout map. `crosstalk` scales every error rate by
/// 1 + crosstalk * (width - 1) for a circuit occupying `width` qubits.
struct NoiseModel {
    double depolarizing_1q = 0.0;
    double depolarizing_2q = 0.0;
    /// Empty: perfect readout. One entry: applied to every qubit. Otherwise one
    /// entry per qubit.
    std::vector<ConfusionMatrix> readout;
    double crosstalk = 0.0;

    static NoiseModel noiseless() { return {}; }
    /// Default depolarizing + readout profile used by experiments.
    static NoiseModel standard();
    /// Same gate noise with readout removed.
    [[nodiscard]] NoiseModel without_readout() const;

    [[nodiscard]] bool is_noiseless() const;
    void validate() const;

    /// Error rates as seen by a circuit of the given width (crosstalk folded
    /// in, `crosstalk` of the result is zero).
    [[nodiscard]] NoiseModel at_width(int width) const;
    /// Per-qubit readout maps for a circuit of the given width.
    [[nodiscard]] std::vector<ConfusionMatrix> readout_maps(int width) const;

    friend bool operator==(const NoiseModel &, const NoiseModel &) = default;
};

/// Outcome distribution over `bits` qubits, stored densely as probabilities.
/// `shots == 0` marks an exact (infinite-shot) distribution; otherwise the
/// probabilities are count / shots.
class Distribution {
  public:
    Distribution() = default;
    Distribution(int bits, std::vector<double> probs, std::uint64_t shots = 0);

    static Distribution point_mass(int bits, std::uint64_t outcome);
    static Distribution uniform(int bits);
    static Distribution from_counts(int bits, std::span<const std::uint64_t> counts);

    [[nodiscard]] int bits() const noexcept { return bits_; }
    [[nodiscard]] std::uint64_t shots() const noexcept { return shots_; }
    [[nodiscard]] bool is_exact() const noexcept { return shots_ == 0; }
    [[nodiscard]] std::span<const double> probabilities() const noexcept { return probs_; }
    [[nodiscard]] double operator[](std::uint64_t outcome) const { return probs_[outcome]; }
    [[nodiscard]] std::uint64_t count(std::uint64_t outcome) const;
    [[nodiscard]] double total() const;

    /// Marginal over the listed qubits, in listed order (listed qubit k becomes
    /// bit k of the result).
    [[nodiscard]] Distribution marginal(std::span<const int> qubits) const;

    friend bool operator==(const Distribution &, const Distribution &) = default;

  private:
    int bits_ = 0;
    std::vector<double> probs_;
    std::uint64_t shots_ = 0;
};

/// Half the L1 distance.
double total_variation(const Distribution &a, const Distribution &b);

/// Clamps negative masses to zero and rescales to unit total. Throws
/// NumericFailure when nothing positive remains.
std::vector<double> clip_and_normalize(std::vector<double> values);

/// Applies per-qubit maps: p' = (⊗_q A_q) p.
std::vector<double> apply_readout(std::span<const double> probs,
                                  std::span<const ConfusionMatrix> maps);

Statevector simulate_exact(const Circuit &c);
DensityMatrix simulate_density(const Circuit &c, const NoiseModel &noise);
Distribution simulate_noisy(const Circuit &c, const NoiseModel &noise);
/// Exact Z-basis distribution, dispatching to the statevector path when the
/// model is noiseless.
Distribution measure(const Circuit &c, const NoiseModel &noise);

/// Multinomial draw of `shots` outcomes, deterministic for a seed.
Distribution sample(const Distribution &d, std::uint64_t shots, std::uint64_t seed);

} // namespace qsplit
