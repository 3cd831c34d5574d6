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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsplit/fleet.hpp"
#include "qsplit/qsvm.hpp"
#include "qsplit/simulator.hpp"
#include "qsplit/vqe.hpp"

namespace qsplit::scenario {

enum class Workload { Vqe, Qsvm };

struct VqeSettings {
    vqe::Mode mode = vqe::Mode::Uncut;
    int qubits = 6;
    int reps = 1;
    /// Charged by the timing model; also the sample size unless `exact`.
    std::uint64_t shots = 4000;
    bool exact = false;
    int resilience = 0;
    int max_iters = 500;
};

struct QsvmSettings {
    int qubits = 6;
    std::size_t circuits_per_job = 1000;
    fleet::Dispatch dispatch = fleet::Dispatch::Sequential;
    int resilience = 0;
    std::uint64_t shots = 2000;
    bool exact = false;
    int feature_map_reps = 2;
    double c = 1.0;
    std::size_t sample = 100;
    double train_fraction = 0.7;
    std::filesystem::path dataset;
};

struct ScenarioSpec {
    Workload workload = Workload::Qsvm;
    VqeSettings vqe;
    QsvmSettings qsvm;
    /// "standard" or "none".
    std::string noise = "standard";
    std::uint64_t seed = 0;
    /// Empty: built-in fleet profiles.
    std::filesystem::path fleet_config;
};

/// QSVM: "6Q-1000C-SEQ", "2Q-500C-PAR-TREX", "2Q-500C-SEQ-ZNE", ...
/// VQE: "VQE-CUT-4000S-R1", "VQE-UNCUT-EXACT-R0".
std::string canonical_label(const ScenarioSpec &spec);
/// Parses a QSVM label into qubits, circuits per job, dispatch and
/// resilience on top of `base`. Throws InvalidArgument for unknown labels.
ScenarioSpec from_label(std::string_view label, ScenarioSpec base = {});
/// The QSVM workload labels exercised by the experiments.
const std::vector<std::string> &qsvm_labels();

NoiseModel noise_from_name(std::string_view name);
/// Dataset used when none is given: $QSPLIT_DATASET, else the bundled CSV.
std::filesystem::path default_dataset();

struct Report {
    std::filesystem::path directory;
    std::string label;
    nlohmann::json metrics;
};

/// Runs the scenario and writes its reports into `root / (label + "-seed" +
/// seed)`: manifest.json, metrics.json, metrics.csv, a per-iteration
/// (VQE) or per-job (QSVM) CSV, pre_execution_cdf.csv, kernel CSVs for QSVM
/// and classical_overhead.json. Everything except classical_overhead.json is
/// a pure function of the spec.
Report run_scenario(const ScenarioSpec &spec, const std::filesystem::path &root);

/// Files whose bytes are a function of the spec alone.
std::vector<std::string> deterministic_files(Workload workload);

struct ComparisonRow {
    std::string label;
    double quality = 0.0;
    double qubit_seconds = 0.0;
    double makespan = 0.0;
    double pre_execution_p50 = 0.0;
    double pre_execution_p70 = 0.0;
    double classical_overhead = 0.0;
    /// Ratios against the first report.
    double quality_ratio = 1.0;
    double footprint_ratio = 1.0;
    double makespan_ratio = 1.0;
    /// first / this qubit-seconds.
    double footprint_reduction = 1.0;
};

/// Reads metrics from run directories (or metrics.json paths). Throws
/// InvalidArgument for fewer than two reports or mixed workloads.
std::vector<ComparisonRow> compare(const std::vector<std::filesystem::path> &reports);
void write_comparison_csv(std::ostream &out, const std::vector<ComparisonRow> &rows);

} // namespace qsplit::scenario
