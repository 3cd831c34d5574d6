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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qsplit/errors.hpp"
#include "qsplit/scenario.hpp"

using namespace qsplit;
using namespace qsplit::scenario;

namespace {

std::filesystem::path fresh_dir(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    return dir;
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t lines(const std::filesystem::path &p) {
    const std::string text = slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

ScenarioSpec small_qsvm(const std::string &label) {
    ScenarioSpec spec = from_label(label);
    spec.qsvm.sample = 30;
    spec.qsvm.dataset = std::filesystem::path(QSPLIT_DATA_DIR) / "heart_failure_synthetic.csv";
    spec.seed = 4;
    return spec;
}

ScenarioSpec small_vqe(vqe::Mode mode) {
    ScenarioSpec spec;
    spec.workload = Workload::Vqe;
    spec.vqe.mode = mode;
    spec.vqe.exact = true;
    spec.vqe.max_iters = 15;
    spec.noise = "none";
    spec.seed = 3;
    return spec;
}

} // namespace

TEST_CASE("every workload label canonicalizes to itself") {
    for (const auto &label : qsvm_labels()) {
        CHECK(canonical_label(from_label(label)) == label);
    }
    const ScenarioSpec s = from_label("2Q-500C-PAR-ZNE");
    CHECK(s.qsvm.qubits == 2);
    CHECK(s.qsvm.circuits_per_job == 500);
    CHECK(s.qsvm.dispatch == fleet::Dispatch::Parallel);
    CHECK(s.qsvm.resilience == 2);
    CHECK(from_label("6Q-1000C-SEQ-TREX").qsvm.resilience == 1);
    CHECK_THROWS_AS(from_label("6F-1000C-SEQ"), InvalidArgument);
    CHECK_THROWS_AS(from_label("6Q-1000C-SEQ-PEC"), InvalidArgument);

    ScenarioSpec v;
    v.workload = Workload::Vqe;
    v.vqe.mode = vqe::Mode::Cut;
    v.vqe.resilience = 1;
    CHECK(canonical_label(v) == "VQE-CUT-4000S-R1");
    v.vqe.exact = true;
    v.vqe.mode = vqe::Mode::Uncut;
    v.vqe.resilience = 0;
    CHECK(canonical_label(v) == "VQE-UNCUT-EXACT-R0");
}

TEST_CASE("qsvm scenario writes reproducible reports") {
    const auto root = fresh_dir("qsplit_scenario_qsvm");
    const ScenarioSpec spec = small_qsvm("2Q-500C-PAR-TREX");
    const Report a = run_scenario(spec, root / "a");
    const Report b = run_scenario(spec, root / "b");
    CHECK(a.directory.filename() == "2Q-500C-PAR-TREX-seed4");
    for (const auto &f : deterministic_files(Workload::Qsvm)) {
        REQUIRE(std::filesystem::exists(a.directory / f));
        CHECK_MESSAGE(slurp(a.directory / f) == slurp(b.directory / f), f);
    }
    CHECK(std::filesystem::exists(a.directory / "classical_overhead.json"));
    // 21 training rows -> 210 circuits, 9 test rows -> 189 circuits; one job each.
    CHECK(a.metrics.at("train_circuits") == 210);
    CHECK(a.metrics.at("test_circuits") == 189);
    CHECK(lines(a.directory / "jobs.csv") == 3);
    CHECK(lines(a.directory / "train_kernel.csv") == 21);
    const auto manifest = nlohmann::json::parse(slurp(a.directory / "manifest.json"));
    CHECK(manifest.at("machines") == nlohmann::json({"ibmq_lima", "ibmq_manila"}));
    CHECK(manifest.at("qsvm").at("features").size() == 2);
    CHECK(manifest.at("fleet").at("machines").size() == 9);

    ScenarioSpec other = spec;
    other.seed = 5;
    const Report c = run_scenario(other, root / "a");
    CHECK(slurp(c.directory / "jobs.csv") != slurp(a.directory / "jobs.csv"));
}

TEST_CASE("qsvm scenario errors") {
    const auto root = fresh_dir("qsplit_scenario_errors");
    ScenarioSpec spec = small_qsvm("2Q-500C-SEQ");
    spec.qsvm.qubits = 13;
    CHECK_THROWS_AS(run_scenario(spec, root), InvalidArgument);
    spec = small_qsvm("2Q-500C-SEQ");
    spec.qsvm.dataset = root / "missing.csv";
    CHECK_THROWS_AS(run_scenario(spec, root), InvalidArgument);
    spec = small_qsvm("2Q-500C-SEQ");
    spec.noise = "loud";
    CHECK_THROWS_AS(run_scenario(spec, root), InvalidArgument);
    spec = small_qsvm("6Q-250C-SEQ");
    CHECK_THROWS_AS(run_scenario(spec, root), ConfigError);

    // A fleet whose only machine is too narrow surfaces a capacity error.
    auto cfg = fleet::FleetConfig::builtin().to_json();
    cfg["assignments"]["6Q-1000C"]["sequential"] = {"ibmq_lima"};
    std::filesystem::create_directories(root);
    std::ofstream(root / "narrow.json") << cfg.dump();
    spec = small_qsvm("6Q-1000C-SEQ");
    spec.fleet_config = root / "narrow.json";
    CHECK_THROWS_AS(run_scenario(spec, root), CapacityError);
}

TEST_CASE("vqe scenario charges more qubit-time when cut") {
    const auto root = fresh_dir("qsplit_scenario_vqe");
    const Report uncut = run_scenario(small_vqe(vqe::Mode::Uncut), root);
    const Report cut = run_scenario(small_vqe(vqe::Mode::Cut), root);
    CHECK(uncut.metrics.at("iterations") == 15);
    CHECK(cut.metrics.at("jobs") == 30);
    CHECK(lines(cut.directory / "iterations.csv") == 16);
    CHECK(cut.metrics.at("qubit_seconds").get<double>() > uncut.metrics.at("qubit_seconds").get<double>());
    // Exact noiseless: identical θ trajectory, so identical energies.
    CHECK(cut.metrics.at("converged_energy").get<double>() ==
          doctest::Approx(uncut.metrics.at("converged_energy").get<double>()).epsilon(1e-9));
    const auto manifest = nlohmann::json::parse(slurp(cut.directory / "manifest.json"));
    CHECK(manifest.at("vqe").at("group_widths") == nlohmann::json({4, 3}));
    CHECK(manifest.at("vqe").at("circuits_per_group") == nlohmann::json({3, 4}));

    const Report again = run_scenario(small_vqe(vqe::Mode::Cut), root / "again");
    for (const auto &f : deterministic_files(Workload::Vqe)) {
        CHECK_MESSAGE(slurp(cut.directory / f) == slurp(again.directory / f), f);
    }
}

TEST_CASE("compare") {
    const auto root = fresh_dir("qsplit_compare");
    const Report six = run_scenario(small_qsvm("6Q-500C-SEQ"), root);
    const Report two = run_scenario(small_qsvm("2Q-500C-SEQ"), root);
    const auto rows = compare({six.directory, two.directory});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].footprint_ratio == 1.0);
    CHECK(rows[1].footprint_reduction > 2.5);
    CHECK(rows[1].footprint_reduction < 3.5);

    const auto same = compare({two.directory, two.directory / "metrics.json"});
    CHECK(same[1].quality_ratio == 1.0);
    CHECK(same[1].footprint_ratio == 1.0);
    CHECK(same[1].makespan_ratio == 1.0);

    CHECK_THROWS_AS(compare({two.directory}), InvalidArgument);
    const Report v = run_scenario(small_vqe(vqe::Mode::Uncut), root);
    CHECK_THROWS_AS(compare({two.directory, v.directory}), InvalidArgument);
    CHECK_THROWS_AS(compare({two.directory, root / "nothing"}), InvalidArgument);

    std::ostringstream out;
    write_comparison_csv(out, rows);
    CHECK(out.str().rfind("label,quality,qubit_seconds", 0) == 0);
}
