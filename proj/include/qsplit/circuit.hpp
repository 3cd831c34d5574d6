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
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsplit {

enum class GateKind { RY, RZ, CNOT, H, S, Sdg, X, Measure };

std::string_view gate_name(GateKind kind) noexcept;

/// One instruction on one or two wires. Rotations carry either a numeric
/// angle or a reference into the owning circuit's parameter list; for a
/// reference the stored `angle` is a multiplier applied at bind time.
struct Gate {
    GateKind kind = GateKind::H;
    std::array<int, 2> qubits{-1, -1};
    std::optional<std::size_t> param;
    double angle = 0.0;

    static Gate ry(int q, double theta);
    static Gate ry_param(int q, std::size_t index, double multiplier = 1.0);
    static Gate rz(int q, double theta);
    static Gate rz_param(int q, std::size_t index, double multiplier = 1.0);
    static Gate cnot(int control, int target);
    static Gate h(int q);
    static Gate s(int q);
    static Gate sdg(int q);
    static Gate x(int q);
    static Gate measure();

    [[nodiscard]] int arity() const noexcept;
    [[nodiscard]] bool is_rotation() const noexcept {
        return kind == GateKind::RY || kind == GateKind::RZ;
    }
    [[nodiscard]] bool is_bound() const noexcept { return !param.has_value(); }
    [[nodiscard]] bool acts_on(int q) const noexcept {
        return qubits[0] == q || qubits[1] == q;
    }

    /// Adjoint of this gate. Measure has no adjoint and is returned as-is.
    [[nodiscard]] Gate inverse() const;

    friend bool operator==(const Gate &, const Gate &) = default;
};

/// Ordered gate list on a fixed number of wires with positional parameters.
///
/// Circuits are plain values: copying is cheap enough at desk scale and a
/// constructed circuit is never mutated behind a caller's back.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int width, std::vector<std::string> params = {});

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept { return gates_; }
    [[nodiscard]] const std::vector<std::string> &params() const noexcept {
        return params_;
    }
    [[nodiscard]] std::size_t num_params() const noexcept { return params_.size(); }

    /// True when no gate references a parameter.
    [[nodiscard]] bool is_bound() const noexcept;

    Circuit &append(const Gate &g);
    /// Appends every gate of `other`. Parameter references in `other` must
    /// index this circuit's parameter list.
    Circuit &append(const Circuit &other);

    /// Adds a terminal Z measurement of every wire.
    Circuit &measure_all();

    /// Adjoint circuit (reverse order, each gate inverted). Measurements are
    /// dropped.
    [[nodiscard]] Circuit inverse() const;

    [[nodiscard]] std::size_t count(GateKind kind) const noexcept;
    /// ASAP gate depth, ignoring measurements.
    [[nodiscard]] int depth() const;

    /// Number of template layers in CLOPS units. Builders record the count of
    /// repeated parameterized blocks they emit; circuits built by hand fall
    /// back to `depth()`.
    [[nodiscard]] int layer_count() const;
    void set_layer_count(int layers) { layers_ = layers; }

    /// One gate per line, e.g. `RY q0 0.5`, `CNOT q1 q2`, `RY q3 theta4`.
    [[nodiscard]] std::string to_text() const;
    static Circuit from_text(std::string_view text);

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    void check_gate(const Gate &g) const;

    int width_ = 0;
    std::vector<Gate> gates_;
    std::vector<std::string> params_;
    std::optional<int> layers_;
};

/// Returns a copy with every parameter reference replaced by its value.
/// Throws InvalidArgument when `theta` does not match the parameter count or
/// when the circuit has no free parameters.
Circuit bind(const Circuit &c, std::span<const double> theta);

/// RealAmplitudes ansatz with reverse-linear entanglement. Each block is an
/// RY column followed by CNOT(i, i+1) for i = n-2 down to 0; a final RY column
/// closes the circuit. Parameter θ_{q(reps+1)+l+1} drives qubit q in RY column
/// l, so for n = 3 the first column reads θ1, θ3, θ5.
Circuit build_real_amplitudes(int n, int reps);

/// Second-order ZZ feature map. Per repetition: H on every wire, RZ(2 x_i),
/// then CNOT·RZ(2(π-x_i)(π-x_j))·CNOT for every pair i < j.
Circuit build_zz_feature_map(int n, int reps, std::span<const double> x);

} // namespace qsplit
