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

#include "qsplit/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>

#include "qsplit/csv.hpp"
#include "qsplit/errors.hpp"
#include "qsplit/rng.hpp"

#ifndef QSPLIT_DATA_DIR
#define QSPLIT_DATA_DIR "data"
#endif

namespace qsplit::scenario {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

constexpr std::uint64_t kSessionStream = 0x5e55;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Nearest-rank percentile; 0 for an empty sample.
double percentile(std::vector<double> v, double p) {
    if (v.empty()) {
        return 0.0;
    }
    std::sort(v.begin(), v.end());
    const auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size())));
    return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

json noise_json(const NoiseModel &n) {
    json readout = json::array();
    for (const auto &m : n.readout) {
        readout.push_back({{"p01", m.m[1][0]}, {"p10", m.m[0][1]}});
    }
    return {{"depolarizing_1q", n.depolarizing_1q},
            {"depolarizing_2q", n.depolarizing_2q},
            {"readout", readout},
            {"crosstalk", n.crosstalk}};
}

json fleet_metrics(const fleet::MetricsRecord &m, std::size_t jobs) {
    return {{"qubit_seconds", m.qubit_seconds},
            {"execution_seconds", m.execution_seconds},
            {"total_execution_seconds", m.total_execution_seconds},
            {"pre_execution_p50_s", percentile(m.pre_execution_seconds, 0.5)},
            {"pre_execution_p70_s", percentile(m.pre_execution_seconds, 0.7)},
            {"pre_execution_max_s", percentile(m.pre_execution_seconds, 1.0)},
            {"jobs", jobs}};
}

void write_text(const std::filesystem::path &p, const std::string &text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw InvalidArgument("cannot write " + p.string());
    }
    out << text;
}

void write_json(const std::filesystem::path &p, const json &j) { write_text(p, j.dump(2) + "\n"); }

void write_metrics_csv(const std::filesystem::path &p, const json &metrics) {
    std::ostringstream out;
    const std::vector<std::string> header{"metric", "value"};
    write_csv_row(out, header);
    for (const auto &item : metrics.items()) {
        const json &v = item.value();
        std::string value;
        if (v.is_number_float()) {
            value = format_number(v.get<double>());
        } else if (v.is_string()) {
            value = v.get<std::string>();
        } else if (v.is_primitive()) {
            value = v.dump();
        } else {
            continue;
        }
        const std::vector<std::string> row{item.key(), value};
        write_csv_row(out, row);
    }
    write_text(p, out.str());
}

void write_matrix_csv(const std::filesystem::path &p, const Eigen::MatrixXd &k) {
    std::ostringstream out;
    for (Eigen::Index r = 0; r < k.rows(); ++r) {
        std::vector<std::string> row;
        for (Eigen::Index c = 0; c < k.cols(); ++c) {
            row.push_back(format_number(k(r, c)));
        }
        write_csv_row(out, row);
    }
    write_text(p, out.str());
}

void write_cdf(const std::filesystem::path &p, const fleet::MetricsRecord &m) {
    std::ostringstream out;
    fleet::write_cdf_csv(out, m.pre_execution_seconds);
    write_text(p, out.str());
}

fleet::FleetConfig load_fleet(const ScenarioSpec &spec) {
    return spec.fleet_config.empty() ? fleet::FleetConfig::builtin() : fleet::FleetConfig::load(spec.fleet_config);
}

json base_manifest(const ScenarioSpec &spec, const std::string &label, const fleet::FleetConfig &fleet_cfg,
                   const NoiseModel &noise) {
    return {{"label", label},
            {"workload", spec.workload == Workload::Vqe ? "vqe" : "qsvm"},
            {"seed", spec.seed},
            {"noise_name", spec.noise},
            {"noise", noise_json(noise)},
            {"fleet", fleet_cfg.to_json()},
            {"modeled_not_measured", {"resilience_multiplier", "queue_delay", "session_dispatch", "per_job_overhead"}}};
}

Report run_vqe_scenario(const ScenarioSpec &spec, const std::filesystem::path &dir, const std::string &label) {
    const auto &s = spec.vqe;
    const fleet::FleetConfig fleet_cfg = load_fleet(spec);
    const NoiseModel noise = noise_from_name(spec.noise);
    vqe::VqeConfig cfg;
    cfg.hamiltonian.n = s.qubits;
    cfg.reps = s.reps;
    cfg.mode = s.mode;
    cfg.shots = s.exact ? 0 : s.shots;
    cfg.resilience = mitigation::resilience_from_int(s.resilience);
    cfg.noise = noise;
    cfg.seed = spec.seed;
    cfg.max_iters = s.max_iters;

    const vqe::Evaluator layout(cfg);
    const auto groups = layout.circuits_per_evaluation();
    const bool cut = s.mode == vqe::Mode::Cut;
    const auto machines = fleet_cfg.machines_for(cut ? "VQE-CUT" : "VQE-UNCUT", cut);
    std::vector<fleet::Session> sessions;
    for (std::size_t m = 0; m < machines.size(); ++m) {
        sessions.emplace_back(m, machines[m], fleet_cfg.queue(machines[m].queue_model), fleet_cfg.timing,
                              fleet::QueuePolicy::Session, derive_seed(spec.seed, kSessionStream));
    }
    // Two evaluations per SPSA iteration; one job per fragment group.
    std::vector<fleet::Job> templates;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        fleet::Job job;
        job.circuit_count = 2 * groups[g].size();
        for (const auto &c : groups[g]) {
            job.width = std::max(job.width, c.width());
            job.layers += 2LL * c.layer_count();
        }
        job.spec = {s.shots, cfg.resilience, cfg.zne, g};
        const auto &machine = machines[g % machines.size()];
        if (job.width > machine.qubits) {
            throw CapacityError("fragment of width " + std::to_string(job.width) + " does not fit " + machine.name +
                                " (" + std::to_string(machine.qubits) + " qubits)");
        }
        templates.push_back(job);
    }

    const auto t0 = Clock::now();
    const vqe::VqeRun run = vqe::run_vqe(cfg);
    const double wall = seconds_since(t0);

    std::vector<fleet::JobRecord> records;
    std::ostringstream iters;
    const std::vector<std::string> header{"iteration", "expectation", "best", "y_plus", "y_minus", "wall_model_time",
                                          "qubit_seconds"};
    write_csv_row(iters, header);
    double now = 0.0;
    double qubit_seconds = 0.0;
    for (const auto &rec : run.trace) {
        double end = now;
        for (std::size_t g = 0; g < templates.size(); ++g) {
            fleet::Job job = templates[g];
            job.id = static_cast<std::size_t>(rec.iteration) * templates.size() + g;
            records.push_back(sessions[g % sessions.size()].submit(job, now));
            qubit_seconds += records.back().qubit_seconds();
            end = std::max(end, records.back().finished);
        }
        now = end;
        const std::vector<std::string> row{std::to_string(rec.iteration), format_number(rec.expectation),
                                           format_number(rec.best),          format_number(rec.y_plus),
                                           format_number(rec.y_minus),       format_number(now),
                                           format_number(qubit_seconds)};
        write_csv_row(iters, row);
    }
    const fleet::MetricsRecord fm = fleet::summarize(records);
    const vqe::GroundTruth gt = vqe::ground_truth(cfg.hamiltonian);

    json metrics = fleet_metrics(fm, records.size());
    metrics["label"] = label;
    metrics["workload"] = "vqe";
    metrics["quality"] = run.converged;
    metrics["converged_energy"] = run.converged;
    metrics["ground_energy"] = gt.energy;
    metrics["relative_error"] = std::abs(run.converged - gt.energy) / std::abs(gt.energy);
    metrics["iterations"] = run.trace.size();
    metrics["plateau_stop"] = run.plateau_stop;

    json manifest = base_manifest(spec, label, fleet_cfg, noise);
    manifest["vqe"] = {{"mode", std::string(vqe::to_string(s.mode))},
                       {"qubits", s.qubits},
                       {"reps", s.reps},
                       {"shots", s.shots},
                       {"exact", s.exact},
                       {"resilience", s.resilience},
                       {"max_iters", s.max_iters},
                       {"spsa", {{"a", cfg.spsa.a}, {"c", cfg.spsa.c}, {"alpha", cfg.spsa.alpha},
                                 {"gamma", cfg.spsa.gamma}, {"stability_fraction", cfg.spsa.stability_fraction},
                                 {"plateau_window", cfg.spsa.plateau_window},
                                 {"plateau_tolerance", cfg.spsa.plateau_tolerance}}},
                       {"parameters", layout.ansatz().num_params()}};
    json widths = json::array();
    json counts = json::array();
    for (const auto &g : groups) {
        widths.push_back(g.front().width());
        counts.push_back(g.size());
    }
    manifest["vqe"]["group_widths"] = widths;
    manifest["vqe"]["circuits_per_group"] = counts;
    json machine_names = json::array();
    for (const auto &m : machines) {
        machine_names.push_back(m.name);
    }
    manifest["machines"] = machine_names;
    manifest["final_theta"] = run.final_theta;

    write_json(dir / "manifest.json", manifest);
    write_json(dir / "metrics.json", metrics);
    write_metrics_csv(dir / "metrics.csv", metrics);
    write_text(dir / "iterations.csv", iters.str());
    std::ostringstream jobs;
    fleet::write_jobs_csv(jobs, records);
    write_text(dir / "jobs.csv", jobs.str());
    write_cdf(dir / "pre_execution_cdf.csv", fm);
    write_json(dir / "classical_overhead.json",
               {{"classical_overhead_seconds", run.classical_seconds}, {"optimizer_wall_seconds", wall}});
    return {dir, label, metrics};
}

Report run_qsvm_scenario(const ScenarioSpec &spec, const std::filesystem::path &dir, const std::string &label) {
    const auto &s = spec.qsvm;
    const fleet::FleetConfig fleet_cfg = load_fleet(spec);
    const NoiseModel noise = noise_from_name(spec.noise);
    const auto path = s.dataset.empty() ? default_dataset() : s.dataset;
    const qsvm::Dataset data = qsvm::load_csv(path);
    if (s.qubits < 1 || static_cast<std::size_t>(s.qubits) > data.dimension()) {
        throw InvalidArgument("qubit count must be between 1 and the number of features (" +
                              std::to_string(data.dimension()) + ")");
    }
    const mitigation::Resilience resilience = mitigation::resilience_from_int(s.resilience);

    double classical = 0.0;
    auto t0 = Clock::now();
    const qsvm::Split split = qsvm::split(data, {s.sample, s.train_fraction, true, spec.seed});
    const auto features = qsvm::select_features(split.train, static_cast<std::size_t>(s.qubits));
    const qsvm::Dataset train = split.train.select(features);
    const qsvm::Dataset test = split.test.select(features);
    const auto train_c = qsvm::kernel_circuits(train.x, {}, s.feature_map_reps);
    const auto test_c = qsvm::kernel_circuits(train.x, test.x, s.feature_map_reps);
    std::vector<Circuit> circuits;
    circuits.reserve(train_c.size() + test_c.size());
    for (const auto *list : {&train_c, &test_c}) {
        for (const auto &kc : *list) {
            circuits.push_back(kc.circuit);
        }
    }
    const mitigation::ZneSchedule zne;
    auto jobs = fleet::batch(std::span(circuits).first(train_c.size()), s.circuits_per_job,
                             {s.shots, resilience, zne, 0});
    const auto test_jobs = fleet::batch(std::span(circuits).subspan(train_c.size()), s.circuits_per_job,
                                        {s.shots, resilience, zne, 1}, jobs.size(), train_c.size());
    jobs.insert(jobs.end(), test_jobs.begin(), test_jobs.end());
    classical += seconds_since(t0);

    const bool parallel = s.dispatch == fleet::Dispatch::Parallel;
    const std::string family = std::to_string(s.qubits) + "Q-" + std::to_string(s.circuits_per_job) + "C";
    const auto machines = fleet_cfg.machines_for(family, parallel);
    fleet::ExecuteOptions opts;
    opts.dispatch = s.dispatch;
    opts.policy = fleet::QueuePolicy::PerJob;
    opts.seed = spec.seed;
    opts.run = {noise, s.exact ? 0 : s.shots, resilience, zne};
    const fleet::Execution exec = fleet::execute(circuits, jobs, machines, fleet_cfg, opts);

    t0 = Clock::now();
    std::map<std::size_t, double> p_train;
    std::map<std::size_t, double> p_test;
    for (std::size_t i = 0; i < train_c.size(); ++i) {
        p_train[i] = exec.results[i][0];
    }
    for (std::size_t i = 0; i < test_c.size(); ++i) {
        p_test[i] = exec.results[train_c.size() + i][0];
    }
    const Eigen::MatrixXd k_train =
        qsvm::assemble_kernel(train_c, p_train, qsvm::KernelKind::Train, train.size(), train.size());
    const Eigen::MatrixXd k_test =
        qsvm::assemble_kernel(test_c, p_test, qsvm::KernelKind::Test, test.size(), train.size());
    classical += seconds_since(t0);
    const qsvm::SvmModel model = qsvm::train_svm(k_train, train.y, s.c);
    const qsvm::Scores scores = qsvm::evaluate(model, k_test, test.y);
    const qsvm::Scores train_scores = qsvm::evaluate(model, k_train, train.y);

    json metrics = fleet_metrics(exec.metrics, exec.jobs.size());
    metrics["label"] = label;
    metrics["workload"] = "qsvm";
    metrics["quality"] = scores.accuracy;
    metrics["accuracy"] = scores.accuracy;
    metrics["macro_f1"] = scores.macro_f1;
    metrics["train_accuracy"] = train_scores.accuracy;
    metrics["support_vectors"] = model.support.size();
    metrics["train_circuits"] = train_c.size();
    metrics["test_circuits"] = test_c.size();

    json manifest = base_manifest(spec, label, fleet_cfg, noise);
    json names = json::array();
    for (std::size_t f : features) {
        names.push_back(data.feature_names[f]);
    }
    json machine_names = json::array();
    for (const auto &m : machines) {
        machine_names.push_back(m.name);
    }
    manifest["machines"] = machine_names;
    manifest["qsvm"] = {{"qubits", s.qubits},
                        {"circuits_per_job", s.circuits_per_job},
                        {"dispatch", std::string(fleet::to_string(s.dispatch))},
                        {"resilience", s.resilience},
                        {"shots", s.shots},
                        {"exact", s.exact},
                        {"feature_map_reps", s.feature_map_reps},
                        {"c", s.c},
                        {"sample", s.sample},
                        {"train_fraction", s.train_fraction},
                        {"dataset", path.filename().string()},
                        {"dataset_hash", data.source_hash},
                        {"features", names},
                        {"train_rows", split.train_rows},
                        {"test_rows", split.test_rows}};

    write_json(dir / "manifest.json", manifest);
    write_json(dir / "metrics.json", metrics);
    write_metrics_csv(dir / "metrics.csv", metrics);
    std::ostringstream jobs_csv;
    fleet::write_jobs_csv(jobs_csv, exec.jobs);
    write_text(dir / "jobs.csv", jobs_csv.str());
    write_cdf(dir / "pre_execution_cdf.csv", exec.metrics);
    write_matrix_csv(dir / "train_kernel.csv", k_train);
    write_matrix_csv(dir / "test_kernel.csv", k_test);
    write_json(dir / "classical_overhead.json", {{"classical_overhead_seconds", classical}});
    return {dir, label, metrics};
}

} // namespace

std::string canonical_label(const ScenarioSpec &spec) {
    if (spec.workload == Workload::Vqe) {
        const auto &v = spec.vqe;
        std::string label = v.mode == vqe::Mode::Cut ? "VQE-CUT-" : "VQE-UNCUT-";
        label += v.exact ? "EXACT" : std::to_string(v.shots) + "S";
        return label + "-R" + std::to_string(v.resilience);
    }
    const auto &q = spec.qsvm;
    std::string label = std::to_string(q.qubits) + "Q-" + std::to_string(q.circuits_per_job) + "C-" +
                        std::string(fleet::to_string(q.dispatch));
    if (q.resilience == 1) {
        label += "-TREX";
    } else if (q.resilience == 2) {
        label += "-ZNE";
    }
    return label;
}

ScenarioSpec from_label(std::string_view label, ScenarioSpec base) {
    static const std::regex pattern(R"(([0-9]+)Q-([0-9]+)C-(SEQ|PAR)(-(TREX|ZNE))?)");
    std::cmatch m;
    const std::string text(label);
    if (!std::regex_match(text.c_str(), m, pattern)) {
        throw InvalidArgument("unknown scenario label '" + text + "'; expected e.g. 6Q-1000C-SEQ or 2Q-500C-PAR-ZNE");
    }
    base.workload = Workload::Qsvm;
    base.qsvm.qubits = std::stoi(m[1].str());
    base.qsvm.circuits_per_job = std::stoul(m[2].str());
    base.qsvm.dispatch = fleet::dispatch_from_string(m[3].str());
    base.qsvm.resilience = !m[5].matched ? 0 : (m[5].str() == "TREX" ? 1 : 2);
    return base;
}

const std::vector<std::string> &qsvm_labels() {
    static const std::vector<std::string> labels{
        "6Q-1000C-SEQ", "6Q-1000C-PAR",      "6Q-500C-SEQ",      "6Q-500C-PAR",     "2Q-500C-SEQ",
        "2Q-500C-PAR",  "2Q-500C-SEQ-TREX", "2Q-500C-PAR-TREX", "2Q-500C-SEQ-ZNE", "2Q-500C-PAR-ZNE"};
    return labels;
}

NoiseModel noise_from_name(std::string_view name) {
    if (name == "standard") {
        return NoiseModel::standard();
    }
    if (name == "none") {
        return NoiseModel::noiseless();
    }
    throw InvalidArgument("noise must be 'standard' or 'none', got '" + std::string(name) + "'");
}

std::filesystem::path default_dataset() {
    if (const char *env = std::getenv("QSPLIT_DATASET"); env != nullptr && *env != '\0') {
        return env;
    }
    return std::filesystem::path(QSPLIT_DATA_DIR) / "heart_failure_synthetic.csv";
}

Report run_scenario(const ScenarioSpec &spec, const std::filesystem::path &root) {
    noise_from_name(spec.noise);
    const std::string label = canonical_label(spec);
    const auto dir = root / (label + "-seed" + std::to_string(spec.seed));
    std::filesystem::create_directories(dir);
    return spec.workload == Workload::Vqe ? run_vqe_scenario(spec, dir, label) : run_qsvm_scenario(spec, dir, label);
}

std::vector<std::string> deterministic_files(Workload workload) {
    if (workload == Workload::Vqe) {
        return {"manifest.json", "metrics.json", "metrics.csv", "iterations.csv", "jobs.csv", "pre_execution_cdf.csv"};
    }
    return {"manifest.json", "metrics.json",         "metrics.csv",    "jobs.csv",
            "pre_execution_cdf.csv", "train_kernel.csv", "test_kernel.csv"};
}

std::vector<ComparisonRow> compare(const std::vector<std::filesystem::path> &reports) {
    if (reports.size() < 2) {
        throw InvalidArgument("compare needs at least two reports");
    }
    std::vector<ComparisonRow> rows;
    std::string workload;
    for (const auto &p : reports) {
        const auto file = std::filesystem::is_directory(p) ? p / "metrics.json" : p;
        std::ifstream in(file);
        if (!in) {
            throw InvalidArgument("cannot read report " + file.string());
        }
        json m;
        try {
            m = json::parse(in);
        } catch (const json::exception &e) {
            throw ParseError("report " + file.string() + " is not valid JSON");
        }
        const auto w = m.value("workload", std::string());
        if (workload.empty()) {
            workload = w;
        } else if (w != workload) {
            throw InvalidArgument("cannot compare " + workload + " and " + w + " reports");
        }
        ComparisonRow r;
        try {
            r.label = m.at("label").get<std::string>();
            r.quality = m.at("quality").get<double>();
            r.qubit_seconds = m.at("qubit_seconds").get<double>();
            r.makespan = m.at("execution_seconds").get<double>();
            r.pre_execution_p50 = m.at("pre_execution_p50_s").get<double>();
            r.pre_execution_p70 = m.at("pre_execution_p70_s").get<double>();
        } catch (const json::exception &e) {
            throw SchemaError("report " + file.string() + " lacks a metric: " + e.what());
        }
        std::ifstream overhead(file.parent_path() / "classical_overhead.json");
        if (overhead) {
            try {
                r.classical_overhead = json::parse(overhead).value("classical_overhead_seconds", 0.0);
            } catch (const json::exception &) {
                r.classical_overhead = 0.0;
            }
        }
        rows.push_back(r);
    }
    const ComparisonRow first = rows.front();
    auto ratio = [](double a, double b) { return b == 0.0 ? (a == 0.0 ? 1.0 : INFINITY) : a / b; };
    for (auto &r : rows) {
        r.quality_ratio = ratio(r.quality, first.quality);
        r.footprint_ratio = ratio(r.qubit_seconds, first.qubit_seconds);
        r.makespan_ratio = ratio(r.makespan, first.makespan);
        r.footprint_reduction = ratio(first.qubit_seconds, r.qubit_seconds);
    }
    return rows;
}

void write_comparison_csv(std::ostream &out, const std::vector<ComparisonRow> &rows) {
    const std::vector<std::string> header{"label",          "quality",         "qubit_seconds",
                                          "makespan_s",     "pre_exec_p50_s",  "pre_exec_p70_s",
                                          "classical_s",    "quality_ratio",   "footprint_ratio",
                                          "makespan_ratio", "footprint_reduction"};
    write_csv_row(out, header);
    for (const auto &r : rows) {
        const std::vector<std::string> row{r.label,
                                           format_number(r.quality),
                                           format_number(r.qubit_seconds),
                                           format_number(r.makespan),
                                           format_number(r.pre_execution_p50),
                                           format_number(r.pre_execution_p70),
                                           format_number(r.classical_overhead),
                                           format_number(r.quality_ratio),
                                           format_number(r.footprint_ratio),
                                           format_number(r.makespan_ratio),
                                           format_number(r.footprint_reduction)};
        write_csv_row(out, row);
    }
}

} // namespace qsplit::scenario
