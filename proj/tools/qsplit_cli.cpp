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

// Command-line runner: vqe, qsvm, compare and fleet-validate subcommands.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qsplit/errors.hpp"
#include "qsplit/fleet.hpp"
#include "qsplit/scenario.hpp"

namespace {

using qsplit::scenario::ScenarioSpec;

void print_report(const qsplit::scenario::Report &r) {
    std::cout << r.label << " -> " << r.directory.string() << "\n";
    for (const char *key : {"quality", "accuracy", "macro_f1", "converged_energy", "qubit_seconds",
                            "execution_seconds", "pre_execution_p70_s", "jobs"}) {
        if (r.metrics.contains(key)) {
            std::cout << "  " << key << " = " << r.metrics.at(key).dump() << "\n";
        }
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qsplit: circuit cutting and batch slicing on a simulated quantum fleet"};
    app.set_config("--config", "", "TOML/INI file with option values");
    app.require_subcommand(1);

    ScenarioSpec spec;
    std::string out_root = "runs";
    std::string fleet_path;
    auto add_common = [&](CLI::App *cmd) {
        cmd->add_option("--seed", spec.seed, "Run seed")->capture_default_str();
        cmd->add_option("--noise", spec.noise, "Noise model: standard or none")
            ->check(CLI::IsMember({"standard", "none"}))
            ->capture_default_str();
        cmd->add_option("--fleet", fleet_path, "Fleet config JSON (default: built-in profiles)");
        cmd->add_option("--out", out_root, "Root directory for run reports")->capture_default_str();
    };

    auto *vqe_cmd = app.add_subcommand("vqe", "Run the VQE workload in cut or uncut mode");
    add_common(vqe_cmd);
    std::string mode = "uncut";
    vqe_cmd->add_option("--mode", mode, "cut or uncut")->check(CLI::IsMember({"cut", "uncut"}))->capture_default_str();
    vqe_cmd->add_option("--shots", spec.vqe.shots, "Shots per circuit")->check(CLI::PositiveNumber)->capture_default_str();
    vqe_cmd->add_flag("--exact", spec.vqe.exact, "Use exact distributions (shots still drive the timing model)");
    vqe_cmd->add_option("--resilience", spec.vqe.resilience, "0 none, 1 readout, 2 ZNE")
        ->check(CLI::Range(0, 2))
        ->capture_default_str();
    vqe_cmd->add_option("--max-iters", spec.vqe.max_iters, "SPSA iteration budget")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    vqe_cmd->add_option("--qubits", spec.vqe.qubits, "Chain length")->check(CLI::Range(2, 14))->capture_default_str();
    vqe_cmd->add_option("--reps", spec.vqe.reps, "Ansatz repetitions")->check(CLI::PositiveNumber)->capture_default_str();

    auto *qsvm_cmd = app.add_subcommand("qsvm", "Run a QSVM workload type");
    add_common(qsvm_cmd);
    std::string label;
    std::string dispatch = "SEQ";
    std::string dataset;
    qsvm_cmd->add_option("--scenario", label, "Workload label, e.g. 6Q-1000C-SEQ or 2Q-500C-PAR-ZNE");
    qsvm_cmd->add_option("--qubits", spec.qsvm.qubits, "Selected features (circuit width)")->capture_default_str();
    qsvm_cmd->add_option("--circuits-per-job", spec.qsvm.circuits_per_job)->capture_default_str();
    qsvm_cmd->add_option("--dispatch", dispatch, "SEQ or PAR")->check(CLI::IsMember({"SEQ", "PAR"}))->capture_default_str();
    qsvm_cmd->add_option("--resilience", spec.qsvm.resilience, "0 none, 1 readout, 2 ZNE")
        ->check(CLI::Range(0, 2))
        ->capture_default_str();
    qsvm_cmd->add_option("--shots", spec.qsvm.shots)->check(CLI::PositiveNumber)->capture_default_str();
    qsvm_cmd->add_flag("--exact", spec.qsvm.exact, "Use exact kernel entries (shots still drive the timing model)");
    qsvm_cmd->add_option("--reps", spec.qsvm.feature_map_reps, "Feature-map repetitions")->capture_default_str();
    qsvm_cmd->add_option("--C", spec.qsvm.c, "SVM box parameter")->check(CLI::PositiveNumber)->capture_default_str();
    qsvm_cmd->add_option("--sample", spec.qsvm.sample, "Rows sampled from the dataset")->capture_default_str();
    qsvm_cmd->add_option("--train-fraction", spec.qsvm.train_fraction)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    qsvm_cmd->add_option("--dataset", dataset, "CSV path (default: $QSPLIT_DATASET or the bundled file)");

    auto *cmp_cmd = app.add_subcommand("compare", "Tabulate metrics of two or more runs of one workload");
    std::vector<std::string> reports;
    std::string cmp_out;
    cmp_cmd->add_option("reports", reports, "Run directories or metrics.json files")->required();
    cmp_cmd->add_option("--output", cmp_out, "Also write the table to this CSV file");

    auto *fv_cmd = app.add_subcommand("fleet-validate", "Check a fleet config file");
    std::string fv_path;
    bool dump = false;
    fv_cmd->add_option("config", fv_path, "Fleet config JSON (default: built-in profiles)");
    fv_cmd->add_flag("--dump", dump, "Print the resolved config as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        spec.fleet_config = fleet_path;
        if (*vqe_cmd) {
            spec.workload = qsplit::scenario::Workload::Vqe;
            spec.vqe.mode = qsplit::vqe::mode_from_string(mode);
            print_report(qsplit::scenario::run_scenario(spec, out_root));
        } else if (*qsvm_cmd) {
            spec.workload = qsplit::scenario::Workload::Qsvm;
            spec.qsvm.dispatch = qsplit::fleet::dispatch_from_string(dispatch);
            if (!label.empty()) {
                spec = qsplit::scenario::from_label(label, spec);
            }
            spec.qsvm.dataset = dataset.empty() ? qsplit::scenario::default_dataset() : std::filesystem::path(dataset);
            print_report(qsplit::scenario::run_scenario(spec, out_root));
        } else if (*cmp_cmd) {
            std::vector<std::filesystem::path> paths(reports.begin(), reports.end());
            const auto rows = qsplit::scenario::compare(paths);
            qsplit::scenario::write_comparison_csv(std::cout, rows);
            if (!cmp_out.empty()) {
                std::ofstream file(cmp_out);
                qsplit::scenario::write_comparison_csv(file, rows);
            }
        } else if (*fv_cmd) {
            const auto cfg = fv_path.empty() ? qsplit::fleet::FleetConfig::builtin()
                                             : qsplit::fleet::FleetConfig::load(fv_path);
            cfg.validate();
            if (dump) {
                std::cout << cfg.to_json().dump(2) << "\n";
            } else {
                std::cout << "ok: " << cfg.machines.size() << " machines, " << cfg.queues.size() << " queues, "
                          << cfg.assignments.size() << " workload assignments\n";
            }
        }
    } catch (const qsplit::Error &e) {
        std::cerr << "error (" << qsplit::to_string(e.kind()) << "): " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
