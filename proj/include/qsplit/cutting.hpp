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

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qsplit/circuit.hpp"
#include "qsplit/simulator.hpp"

namespace qsplit::cutting {

/// Severs `wire` immediately before gate index `position`: gates on the wire
/// with a smaller index stay upstream of the cut, the rest go downstream.
struct CutPoint {
    std::size_t position = 0;
    int wire = 0;

    friend bool operator==(const CutPoint &, const CutPoint &) = default;
};

struct CutPlan {
    std::vector<CutPoint> cuts;

    [[nodiscard]] std::size_t size() const noexcept { return cuts.size(); }
};

/// The single cut that splits a one-repetition reverse-linear RealAmplitudes
/// circuit in two: wire k = (n-1)/2, just before CNOT(k-1, k).
CutPlan mid_chain_plan(const Circuit &ansatz);

enum class Prep { Zero, One, Plus, PlusI };
enum class Basis { X, Y, Z };
enum class Pauli { I, X, Y, Z };

std::string_view to_string(Prep p) noexcept;
std::string_view to_string(Basis b) noexcept;
std::string_view to_string(Pauli p) noexcept;

struct Fragment {
    /// Local circuit; shares the parameter list of the uncut circuit.
    Circuit circuit;
    /// Original wire carried by each local qubit.
    std::vector<int> wires;
    /// Local qubits that start from a preparation slot, and the cut feeding each.
    std::vector<int> cut_inputs;
    std::vector<std::size_t> input_cuts;
    /// Local qubits measured for a cut, and the cut each one feeds.
    std::vector<int> cut_outputs;
    std::vector<std::size_t> output_cuts;
    /// Local qubits that hold an output bit of the uncut circuit.
    std::vector<int> final_qubits;

    [[nodiscard]] int width() const noexcept { return circuit.width(); }
    [[nodiscard]] std::size_t subexperiment_count() const;
};

struct CutCircuit {
    int original_width = 0;
    CutPlan plan;
    /// Fragments in upstream-first topological order.
    std::vector<Fragment> fragments;
    /// Fragment id of every gate of the uncut circuit.
    std::vector<std::size_t> gate_fragment;
};

/// Splits a circuit along the plan. Throws InvalidCut for cuts that sever
/// nothing, duplicate cuts, or plans whose fragments would feed each other.
CutCircuit cut(const Circuit &c, const CutPlan &plan);

struct Subexperiment {
    std::size_t id = 0;
    std::size_t fragment = 0;
    std::vector<Prep> preps;
    std::vector<Basis> bases;
    Circuit circuit;
};

/// One subexperiment per (preparation, basis) choice: 4^inputs · 3^outputs per
/// fragment. Ids are dense and stable for a given CutCircuit.
std::vector<Subexperiment> expand(const CutCircuit &cc);

/// A term of the identity-channel expansion: one Pauli label per cut with
/// weight (1/2)^k.
struct ReconstructionTerm {
    std::vector<Pauli> labels;
    double coefficient = 1.0;
};

std::vector<ReconstructionTerm> reconstruction_terms(std::size_t cuts);

/// Weight of preparation state `prep` when expressing Pauli `label` as a
/// combination of the four preparation projectors.
double preparation_weight(Pauli label, Prep prep) noexcept;

/// Recombines subexperiment outcome distributions (keyed by subexperiment id,
/// any order) into the distribution of the uncut circuit. Negative
/// quasi-probabilities are clipped and the result renormalized.
Distribution reconstruct(const CutCircuit &cc, const std::map<std::size_t, Distribution> &results);

/// JSON records {fragment_id, prep[], basis[], circuit_text}.
nlohmann::json manifest(std::span<const Subexperiment> subexperiments);

} // namespace qsplit::cutting
