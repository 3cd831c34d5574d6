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

#include "qsplit/cutting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <optional>
#include <queue>
#include <string>

#include "qsplit/errors.hpp"

namespace qsplit::cutting {

std::string_view to_string(Prep p) noexcept {
    switch (p) {
    case Prep::Zero:
        return "0";
    case Prep::One:
        return "1";
    case Prep::Plus:
        return "+";
    case Prep::PlusI:
        return "+i";
    }
    return "?";
}

std::string_view to_string(Basis b) noexcept {
    switch (b) {
    case Basis::X:
        return "X";
    case Basis::Y:
        return "Y";
    case Basis::Z:
        return "Z";
    }
    return "?";
}

std::string_view to_string(Pauli p) noexcept {
    switch (p) {
    case Pauli::I:
        return "I";
    case Pauli::X:
        return "X";
    case Pauli::Y:
        return "Y";
    case Pauli::Z:
        return "Z";
    }
    return "?";
}

namespace {

std::uint64_t ipow(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[std::max(a, b)] = std::min(a, b);
        }
    }

  private:
    std::vector<std::size_t> parent_;
};

constexpr std::array<Prep, 4> kPreps{Prep::Zero, Prep::One, Prep::Plus, Prep::PlusI};
constexpr std::array<Basis, 3> kBases{Basis::X, Basis::Y, Basis::Z};
constexpr std::array<Pauli, 4> kPaulis{Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};

Basis basis_for(Pauli p) {
    switch (p) {
    case Pauli::X:
        return Basis::X;
    case Pauli::Y:
        return Basis::Y;
    default:
        return Basis::Z;
    }
}

void append_preparation(Circuit &c, int q, Prep p) {
    switch (p) {
    case Prep::Zero:
        break;
    case Prep::One:
        c.append(Gate::x(q));
        break;
    case Prep::Plus:
        c.append(Gate::h(q));
        break;
    case Prep::PlusI:
        c.append(Gate::h(q));
        c.append(Gate::s(q));
        break;
    }
}

void append_basis_change(Circuit &c, int q, Basis b) {
    switch (b) {
    case Basis::X:
        c.append(Gate::h(q));
        break;
    case Basis::Y:
        c.append(Gate::sdg(q));
        c.append(Gate::h(q));
        break;
    case Basis::Z:
        break;
    }
}

} // namespace

CutPlan mid_chain_plan(const Circuit &ansatz) {
    const int n = ansatz.width();
    if (n < 3) {
        throw InvalidArgument("a chain needs at least 3 qubits to cut in two");
    }
    const int k = (n - 1) / 2;
    const auto &gates = ansatz.gates();
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto &g = gates[i];
        if (g.kind == GateKind::CNOT && g.qubits[0] == k - 1 && g.qubits[1] == k) {
            return CutPlan{{CutPoint{i, k}}};
        }
    }
    throw InvalidArgument("circuit has no CNOT(k-1, k) rung to cut before");
}

std::size_t Fragment::subexperiment_count() const {
    return static_cast<std::size_t>(ipow(4, cut_inputs.size()) * ipow(3, cut_outputs.size()));
}

CutCircuit cut(const Circuit &c, const CutPlan &plan) {
    const int n = c.width();
    const auto &gates = c.gates();
    CutCircuit out;
    out.original_width = n;
    out.plan = plan;

    if (plan.cuts.empty()) {
        Fragment f;
        f.circuit = c;
        for (int q = 0; q < n; ++q) {
            f.wires.push_back(q);
            f.final_qubits.push_back(q);
        }
        out.fragments.push_back(std::move(f));
        out.gate_fragment.assign(gates.size(), 0);
        return out;
    }

    // Cut positions per wire, validated.
    std::vector<std::vector<std::size_t>> wire_cuts(static_cast<std::size_t>(n));
    for (const auto &cp : plan.cuts) {
        if (cp.wire < 0 || cp.wire >= n || cp.position > gates.size()) {
            throw InvalidCut("cut point outside the circuit");
        }
        bool before = false;
        bool after = false;
        for (std::size_t i = 0; i < gates.size(); ++i) {
            if (gates[i].kind != GateKind::Measure && gates[i].acts_on(cp.wire)) {
                (i < cp.position ? before : after) = true;
            }
        }
        if (!before || !after) {
            throw InvalidCut("cut on wire " + std::to_string(cp.wire) + " at position " +
                             std::to_string(cp.position) + " does not separate two gates");
        }
        wire_cuts[cp.wire].push_back(cp.position);
    }
    for (int q = 0; q < n; ++q) {
        auto &v = wire_cuts[q];
        std::ranges::sort(v);
        // Two cuts with no gate of the wire between them sever the same span.
        for (std::size_t j = 1; j < v.size(); ++j) {
            bool gate_between = false;
            for (std::size_t i = v[j - 1]; i < v[j]; ++i) {
                gate_between = gate_between || (gates[i].kind != GateKind::Measure && gates[i].acts_on(q));
            }
            if (!gate_between) {
                throw InvalidCut("two cuts on wire " + std::to_string(q) + " with no gate between them");
            }
        }
    }

    // Segment numbering: wire q, segment s -> seg_base[q] + s.
    std::vector<std::size_t> seg_base(static_cast<std::size_t>(n) + 1, 0);
    for (int q = 0; q < n; ++q) {
        seg_base[q + 1] = seg_base[q] + wire_cuts[q].size() + 1;
    }
    const std::size_t num_segments = seg_base[n];
    auto segment_of = [&](int q, std::size_t gate_index) {
        const auto &v = wire_cuts[q];
        const auto s = static_cast<std::size_t>(std::ranges::upper_bound(v, gate_index) - v.begin());
        return seg_base[q] + s;
    };

    DisjointSets sets(num_segments);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto &g = gates[i];
        if (g.arity() == 2) {
            sets.unite(segment_of(g.qubits[0], i), segment_of(g.qubits[1], i));
        }
    }

    // Components -> provisional fragment ids, ordered by first appearance.
    std::vector<std::size_t> first_gate(num_segments, gates.size());
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto &g = gates[i];
        for (int a = 0; a < g.arity(); ++a) {
            auto root = sets.find(segment_of(g.qubits[a], i));
            first_gate[root] = std::min(first_gate[root], i);
        }
    }
    std::vector<std::size_t> roots;
    for (std::size_t s = 0; s < num_segments; ++s) {
        if (sets.find(s) == s) {
            roots.push_back(s);
        }
    }
    std::ranges::stable_sort(roots, [&](std::size_t a, std::size_t b) { return first_gate[a] < first_gate[b]; });
    std::vector<std::size_t> provisional(num_segments);
    for (std::size_t r = 0; r < roots.size(); ++r) {
        for (std::size_t s = 0; s < num_segments; ++s) {
            if (sets.find(s) == roots[r]) {
                provisional[s] = r;
            }
        }
    }

    // Cut edges: upstream segment -> downstream segment of the same wire.
    struct Edge {
        std::size_t cut;
        std::size_t up_segment;
        std::size_t down_segment;
    };
    std::vector<Edge> edges;
    for (std::size_t ci = 0; ci < plan.cuts.size(); ++ci) {
        const auto &cp = plan.cuts[ci];
        const auto &v = wire_cuts[cp.wire];
        const auto s = static_cast<std::size_t>(std::ranges::lower_bound(v, cp.position) - v.begin());
        edges.push_back({ci, seg_base[cp.wire] + s, seg_base[cp.wire] + s + 1});
    }

    const std::size_t nf = roots.size();
    std::vector<std::vector<std::size_t>> succ(nf);
    std::vector<std::size_t> indegree(nf, 0);
    for (const auto &e : edges) {
        const auto a = provisional[e.up_segment];
        const auto b = provisional[e.down_segment];
        if (a == b) {
            throw InvalidCut("cut " + std::to_string(e.cut) + " leaves both sides in one fragment");
        }
        succ[a].push_back(b);
        ++indegree[b];
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t f = 0; f < nf; ++f) {
        if (indegree[f] == 0) {
            ready.push(f);
        }
    }
    std::vector<std::size_t> topo_id(nf, nf);
    std::size_t next = 0;
    while (!ready.empty()) {
        const auto f = ready.top();
        ready.pop();
        topo_id[f] = next++;
        for (auto g : succ[f]) {
            if (--indegree[g] == 0) {
                ready.push(g);
            }
        }
    }
    if (next != nf) {
        throw InvalidCut("cut plan creates a cyclic dependency between fragments");
    }

    // Local qubit layout: segments of a fragment sorted by (wire, segment).
    std::vector<std::vector<std::size_t>> frag_segments(nf);
    for (std::size_t s = 0; s < num_segments; ++s) {
        frag_segments[topo_id[provisional[s]]].push_back(s);
    }
    std::vector<int> local_of(num_segments, -1);
    std::vector<int> wire_of(num_segments, 0);
    std::vector<std::size_t> index_in_wire(num_segments, 0);
    for (int q = 0; q < n; ++q) {
        for (std::size_t s = seg_base[q]; s < seg_base[q + 1]; ++s) {
            wire_of[s] = q;
            index_in_wire[s] = s - seg_base[q];
        }
    }

    out.fragments.resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        auto &frag = out.fragments[f];
        const auto &segs = frag_segments[f];
        for (std::size_t local = 0; local < segs.size(); ++local) {
            local_of[segs[local]] = static_cast<int>(local);
            frag.wires.push_back(wire_of[segs[local]]);
        }
        frag.circuit = Circuit(static_cast<int>(segs.size()), c.params());
        frag.circuit.set_layer_count(c.layer_count());
        for (auto s : segs) {
            const int q = wire_of[s];
            const auto idx = index_in_wire[s];
            const auto ncuts = wire_cuts[q].size();
            if (idx == ncuts) {
                frag.final_qubits.push_back(local_of[s]);
            }
        }
    }
    for (const auto &e : edges) {
        auto &up = out.fragments[topo_id[provisional[e.up_segment]]];
        auto &down = out.fragments[topo_id[provisional[e.down_segment]]];
        up.cut_outputs.push_back(local_of[e.up_segment]);
        up.output_cuts.push_back(e.cut);
        down.cut_inputs.push_back(local_of[e.down_segment]);
        down.input_cuts.push_back(e.cut);
    }

    out.gate_fragment.resize(gates.size(), 0);
    for (std::size_t i = 0; i < gates.size(); ++i) {
        Gate g = gates[i];
        if (g.kind == GateKind::Measure) {
            continue;
        }
        const auto s0 = segment_of(g.qubits[0], i);
        const auto f = topo_id[provisional[s0]];
        out.gate_fragment[i] = f;
        g.qubits[0] = local_of[s0];
        if (g.arity() == 2) {
            g.qubits[1] = local_of[segment_of(g.qubits[1], i)];
        }
        out.fragments[f].circuit.append(g);
    }
    return out;
}

namespace {

/// Offset of each fragment's first subexperiment id.
std::vector<std::size_t> fragment_offsets(const CutCircuit &cc) {
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    for (const auto &f : cc.fragments) {
        offsets.push_back(total);
        total += f.subexperiment_count();
    }
    offsets.push_back(total);
    return offsets;
}

} // namespace

std::vector<Subexperiment> expand(const CutCircuit &cc) {
    std::vector<Subexperiment> out;
    for (std::size_t fi = 0; fi < cc.fragments.size(); ++fi) {
        const auto &f = cc.fragments[fi];
        const auto n_in = f.cut_inputs.size();
        const auto n_out = f.cut_outputs.size();
        const auto prep_combos = ipow(4, n_in);
        const auto basis_combos = ipow(3, n_out);
        for (std::uint64_t pc = 0; pc < prep_combos; ++pc) {
            for (std::uint64_t bc = 0; bc < basis_combos; ++bc) {
                Subexperiment sub;
                sub.id = out.size();
                sub.fragment = fi;
                std::uint64_t code = pc;
                for (std::size_t i = 0; i < n_in; ++i) {
                    sub.preps.push_back(kPreps[code % 4]);
                    code /= 4;
                }
                code = bc;
                for (std::size_t o = 0; o < n_out; ++o) {
                    sub.bases.push_back(kBases[code % 3]);
                    code /= 3;
                }
                Circuit circ(f.width(), f.circuit.params());
                for (std::size_t i = 0; i < n_in; ++i) {
                    append_preparation(circ, f.cut_inputs[i], sub.preps[i]);
                }
                circ.append(f.circuit);
                for (std::size_t o = 0; o < n_out; ++o) {
                    append_basis_change(circ, f.cut_outputs[o], sub.bases[o]);
                }
                circ.set_layer_count(f.circuit.layer_count());
                sub.circuit = std::move(circ);
                out.push_back(std::move(sub));
            }
        }
    }
    return out;
}

std::vector<ReconstructionTerm> reconstruction_terms(std::size_t cuts) {
    std::vector<ReconstructionTerm> terms;
    const auto count = ipow(4, cuts);
    const double coefficient = std::pow(0.5, static_cast<double>(cuts));
    for (std::uint64_t code = 0; code < count; ++code) {
        ReconstructionTerm t;
        std::uint64_t c = code;
        for (std::size_t k = 0; k < cuts; ++k) {
            t.labels.push_back(kPaulis[c % 4]);
            c /= 4;
        }
        t.coefficient = coefficient;
        terms.push_back(std::move(t));
    }
    return terms;
}

double preparation_weight(Pauli label, Prep prep) noexcept {
    // I = |0><0| + |1><1|, Z = |0><0| - |1><1|,
    // X = 2|+><+| - I, Y = 2|+i><+i| - I.
    switch (label) {
    case Pauli::I:
        return (prep == Prep::Zero || prep == Prep::One) ? 1.0 : 0.0;
    case Pauli::Z:
        return prep == Prep::Zero ? 1.0 : prep == Prep::One ? -1.0 : 0.0;
    case Pauli::X:
        return prep == Prep::Plus ? 2.0 : prep == Prep::PlusI ? 0.0 : -1.0;
    case Pauli::Y:
        return prep == Prep::PlusI ? 2.0 : prep == Prep::Plus ? 0.0 : -1.0;
    }
    return 0.0;
}

namespace {

/// Fragment tensor for one assignment of Pauli labels to the fragment's cut
/// endpoints: a vector over the fragment's final-bit outcomes.
std::vector<double> fragment_tensor(const Fragment &f, std::size_t offset,
                                    const std::map<std::size_t, Distribution> &results,
                                    std::span<const Pauli> in_labels, std::span<const Pauli> out_labels) {
    const auto n_in = f.cut_inputs.size();
    const auto n_out = f.cut_outputs.size();
    const auto n_final = f.final_qubits.size();
    std::vector<double> tensor(1ULL << n_final, 0.0);

    std::uint64_t basis_code = 0;
    for (std::size_t o = n_out; o-- > 0;) {
        const auto b = basis_for(out_labels[o]);
        basis_code = basis_code * 3 + static_cast<std::uint64_t>(std::ranges::find(kBases, b) - kBases.begin());
    }
    const auto basis_combos = ipow(3, n_out);

    for (std::uint64_t pc = 0; pc < ipow(4, n_in); ++pc) {
        double weight = 1.0;
        std::uint64_t code = pc;
        for (std::size_t i = 0; i < n_in && weight != 0.0; ++i) {
            weight *= preparation_weight(in_labels[i], kPreps[code % 4]);
            code /= 4;
        }
        if (weight == 0.0) {
            continue;
        }
        const auto id = offset + pc * basis_combos + basis_code;
        const auto &d = results.at(id);
        const auto probs = d.probabilities();
        for (std::uint64_t z = 0; z < probs.size(); ++z) {
            if (probs[z] == 0.0) {
                continue;
            }
            double sign = 1.0;
            for (std::size_t o = 0; o < n_out; ++o) {
                if (out_labels[o] != Pauli::I && ((z >> f.cut_outputs[o]) & 1ULL)) {
                    sign = -sign;
                }
            }
            std::uint64_t fz = 0;
            for (std::size_t b = 0; b < n_final; ++b) {
                fz |= ((z >> f.final_qubits[b]) & 1ULL) << b;
            }
            tensor[fz] += weight * sign * probs[z];
        }
    }
    return tensor;
}

} // namespace

Distribution reconstruct(const CutCircuit &cc, const std::map<std::size_t, Distribution> &results) {
    const auto offsets = fragment_offsets(cc);
    std::optional<std::uint64_t> shots;
    for (std::size_t id = 0; id < offsets.back(); ++id) {
        auto it = results.find(id);
        if (it == results.end()) {
            throw IncompleteResults("missing result for subexperiment " + std::to_string(id));
        }
        const auto fi = static_cast<std::size_t>(std::ranges::upper_bound(offsets, id) - offsets.begin()) - 1;
        if (it->second.bits() != cc.fragments[fi].width()) {
            throw InvalidArgument("subexperiment " + std::to_string(id) + " result has the wrong width");
        }
        if (shots && *shots != it->second.shots()) {
            throw InvalidArgument("subexperiment results use different shot counts");
        }
        shots = it->second.shots();
    }

    const int n = cc.original_width;
    const std::size_t k = cc.plan.size();
    const std::size_t nf = cc.fragments.size();
    std::vector<double> out(1ULL << n, 0.0);

    // Global outcome bit positions of each fragment's final qubits.
    std::vector<std::vector<int>> final_wires(nf);
    for (std::size_t fi = 0; fi < nf; ++fi) {
        const auto &f = cc.fragments[fi];
        for (int lq : f.final_qubits) {
            final_wires[fi].push_back(f.wires[lq]);
        }
    }

    std::vector<std::vector<double>> tensors(nf);
    for (const auto &term : reconstruction_terms(k)) {
        for (std::size_t fi = 0; fi < nf; ++fi) {
            const auto &f = cc.fragments[fi];
            std::vector<Pauli> in_labels;
            std::vector<Pauli> out_labels;
            for (auto ci : f.input_cuts) {
                in_labels.push_back(term.labels[ci]);
            }
            for (auto ci : f.output_cuts) {
                out_labels.push_back(term.labels[ci]);
            }
            tensors[fi] = fragment_tensor(f, offsets[fi], results, in_labels, out_labels);
        }
        for (std::uint64_t z = 0; z < out.size(); ++z) {
            double v = term.coefficient;
            for (std::size_t fi = 0; fi < nf && v != 0.0; ++fi) {
                std::uint64_t fz = 0;
                const auto &fw = final_wires[fi];
                for (std::size_t b = 0; b < fw.size(); ++b) {
                    fz |= ((z >> fw[b]) & 1ULL) << b;
                }
                v *= tensors[fi][fz];
            }
            out[z] += v;
        }
    }
    return {n, clip_and_normalize(std::move(out))};
}

nlohmann::json manifest(std::span<const Subexperiment> subexperiments) {
    auto records = nlohmann::json::array();
    for (const auto &s : subexperiments) {
        nlohmann::json r;
        r["id"] = s.id;
        r["fragment_id"] = s.fragment;
        auto preps = nlohmann::json::array();
        for (auto p : s.preps) {
            preps.push_back(std::string(to_string(p)));
        }
        auto bases = nlohmann::json::array();
        for (auto b : s.bases) {
            bases.push_back(std::string(to_string(b)));
        }
        r["prep"] = std::move(preps);
        r["basis"] = std::move(bases);
        r["circuit_text"] = s.circuit.to_text();
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace qsplit::cutting
