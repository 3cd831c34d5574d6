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

#include "qsplit/fleet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "qsplit/csv.hpp"
#include "qsplit/errors.hpp"
#include "qsplit/rng.hpp"

namespace qsplit::fleet {

namespace {

constexpr std::uint64_t kQueueStream = 1;
constexpr std::uint64_t kDispatchStream = 2;
constexpr std::uint64_t kResultStream = 3;

MachineProfile profile(std::string name, int qubits, int qv, double clops) {
    MachineProfile m;
    m.name = std::move(name);
    m.qubits = qubits;
    m.quantum_volume = qv;
    m.clops = clops;
    m.max_circuits_per_job = 1000;
    m.queue_model = "none";
    return m;
}

QueueSpec knots(std::vector<std::pair<double, double>> k) {
    QueueSpec q;
    q.knots = std::move(k);
    return q;
}

template <typename T> T field(const nlohmann::json &j, const char *key, const std::string &where) {
    if (!j.contains(key)) {
        throw ConfigError(where + ": missing field '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(where + ": field '" + key + "' has the wrong type");
    }
}

template <typename T> T field_or(const nlohmann::json &j, const char *key, T fallback, const std::string &where) {
    return j.contains(key) ? field<T>(j, key, where) : fallback;
}

} // namespace

void QueueSpec::validate() const {
    if (knots.size() < 2) {
        throw ConfigError("queue spec needs at least two knots");
    }
    if (knots.front().first != 0.0 || knots.back().first != 1.0) {
        throw ConfigError("queue spec probabilities must run from 0 to 1");
    }
    for (std::size_t i = 0; i < knots.size(); ++i) {
        const auto [p, minutes] = knots[i];
        if (!std::isfinite(p) || !std::isfinite(minutes) || minutes < 0.0) {
            throw ConfigError("queue spec delays must be finite and non-negative");
        }
        if (i > 0 && (p <= knots[i - 1].first || minutes < knots[i - 1].second)) {
            throw ConfigError("queue spec knots must increase in probability and not decrease in delay");
        }
    }
}

double QueueSpec::quantile_minutes(double p) const {
    p = std::clamp(p, 0.0, 1.0);
    const auto hi = std::lower_bound(knots.begin(), knots.end(), p,
                                     [](const auto &knot, double v) { return knot.first < v; });
    if (hi == knots.begin()) {
        return hi->second;
    }
    const auto lo = std::prev(hi);
    const double t = (p - lo->first) / (hi->first - lo->first);
    return lo->second + t * (hi->second - lo->second);
}

double queue_delay(const QueueSpec &spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);
    return 60.0 * spec.quantile_minutes(rng.uniform());
}

void MachineProfile::validate() const {
    if (name.empty()) {
        throw ConfigError("machine profile needs a name");
    }
    if (qubits < 1) {
        throw ConfigError("machine '" + name + "' must have at least one qubit");
    }
    if (!(clops > 0.0) || !std::isfinite(clops)) {
        throw ConfigError("machine '" + name + "' must have positive CLOPS");
    }
    if (max_circuits_per_job < 1) {
        throw ConfigError("machine '" + name + "' must accept at least one circuit per job");
    }
    if (quantum_volume < 0) {
        throw ConfigError("machine '" + name + "' has a negative quantum volume");
    }
}

void TimingModel::validate() const {
    if (per_job_overhead < 0.0 || session_dispatch_mean < 0.0 || readout_multiplier < 1.0 ||
        calibration_circuits_per_qubit < 0) {
        throw ConfigError("timing model values must be non-negative and the readout multiplier at least 1");
    }
}

void FleetConfig::validate() const {
    timing.validate();
    std::set<std::string> names;
    for (const auto &m : machines) {
        m.validate();
        if (!names.insert(m.name).second) {
            throw ConfigError("duplicate machine '" + m.name + "'");
        }
        if (!queues.contains(m.queue_model)) {
            throw ConfigError("machine '" + m.name + "' references unknown queue '" + m.queue_model + "'");
        }
    }
    for (const auto &[name, q] : queues) {
        try {
            q.validate();
        } catch (const ConfigError &e) {
            throw ConfigError("queue '" + name + "': " + e.what());
        }
    }
    for (const auto &[name, a] : assignments) {
        if (a.sequential.empty() || a.parallel.empty()) {
            throw ConfigError("assignment '" + name + "' needs sequential and parallel machines");
        }
        for (const auto *list : {&a.sequential, &a.parallel}) {
            for (const auto &m : *list) {
                if (!names.contains(m)) {
                    throw ConfigError("assignment '" + name + "' references unknown machine '" + m + "'");
                }
            }
        }
        if (!queues.contains(a.queue)) {
            throw ConfigError("assignment '" + name + "' references unknown queue '" + a.queue + "'");
        }
    }
}

const MachineProfile &FleetConfig::machine(std::string_view name) const {
    for (const auto &m : machines) {
        if (m.name == name) {
            return m;
        }
    }
    throw ConfigError("unknown machine '" + std::string(name) + "'");
}

const QueueSpec &FleetConfig::queue(std::string_view name) const {
    const auto it = queues.find(std::string(name));
    if (it == queues.end()) {
        throw ConfigError("unknown queue '" + std::string(name) + "'");
    }
    return it->second;
}

const Assignment &FleetConfig::assignment(std::string_view workload) const {
    const auto it = assignments.find(std::string(workload));
    if (it == assignments.end()) {
        throw ConfigError("no machine assignment for workload '" + std::string(workload) + "'");
    }
    return it->second;
}

std::vector<MachineProfile> FleetConfig::machines_for(std::string_view workload, bool parallel) const {
    const Assignment &a = assignment(workload);
    std::vector<MachineProfile> out;
    for (const auto &name : parallel ? a.parallel : a.sequential) {
        out.push_back(machine(name));
        out.back().queue_model = a.queue;
    }
    return out;
}

FleetConfig FleetConfig::builtin() {
    FleetConfig c;
    c.machines = {
        profile("ibm_hanoi", 27, 64, 2300),   profile("ibmq_jakarta", 7, 16, 2400),
        profile("ibm_oslo", 7, 32, 2600),     profile("ibm_nairobi", 7, 32, 2600),
        profile("ibmq_perth", 7, 32, 2900),   profile("ibmq_manila", 5, 32, 2800),
        profile("ibmq_quito", 5, 16, 2500),   profile("ibmq_belem", 5, 16, 2500),
        profile("ibmq_lima", 5, 8, 2700),
    };
    c.queues = {
        {"none", knots({{0.0, 0.0}, {1.0, 0.0}})},
        {"session", knots({{0.0, 0.0}, {0.5, 5.0}, {0.9, 30.0}, {1.0, 120.0}})},
        {"2Q-500C", knots({{0.0, 0.0}, {0.7, 100.0}, {1.0, 500.0}})},
        {"6Q-500C", knots({{0.0, 0.0}, {0.4, 100.0}, {0.7, 250.0}, {1.0, 3000.0}})},
        {"6Q-1000C", knots({{0.0, 0.0}, {0.75, 1000.0}, {1.0, 3000.0}})},
    };
    c.assignments = {
        {"6Q-1000C", {{"ibm_oslo"}, {"ibm_nairobi", "ibm_oslo"}, "6Q-1000C"}},
        {"6Q-500C", {{"ibm_oslo"}, {"ibm_nairobi", "ibm_hanoi"}, "6Q-500C"}},
        {"2Q-1000C", {{"ibmq_lima"}, {"ibmq_lima", "ibmq_manila"}, "2Q-500C"}},
        {"2Q-500C", {{"ibmq_lima"}, {"ibmq_lima", "ibmq_manila"}, "2Q-500C"}},
        {"VQE-UNCUT", {{"ibm_oslo"}, {"ibm_oslo"}, "session"}},
        {"VQE-CUT", {{"ibmq_belem"}, {"ibmq_belem", "ibmq_quito"}, "session"}},
    };
    return c;
}

FleetConfig FleetConfig::from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ConfigError("fleet config must be a JSON object");
    }
    FleetConfig c;
    if (j.contains("timing")) {
        const auto &t = j.at("timing");
        c.timing.per_job_overhead = field_or(t, "per_job_overhead_s", c.timing.per_job_overhead, "timing");
        c.timing.session_dispatch_mean =
            field_or(t, "session_dispatch_mean_s", c.timing.session_dispatch_mean, "timing");
        c.timing.readout_multiplier = field_or(t, "readout_multiplier", c.timing.readout_multiplier, "timing");
        c.timing.calibration_circuits_per_qubit =
            field_or(t, "calibration_circuits_per_qubit", c.timing.calibration_circuits_per_qubit, "timing");
    }
    const auto machines = field<nlohmann::json>(j, "machines", "fleet config");
    if (!machines.is_array()) {
        throw ConfigError("fleet config: 'machines' must be an array");
    }
    for (const auto &m : machines) {
        MachineProfile p;
        p.name = field<std::string>(m, "name", "machine");
        const std::string where = "machine '" + p.name + "'";
        p.qubits = field<int>(m, "qubits", where);
        p.quantum_volume = field_or(m, "quantum_volume", 0, where);
        p.clops = field<double>(m, "clops", where);
        p.max_circuits_per_job = field_or<std::size_t>(m, "max_circuits_per_job", 1000, where);
        p.queue_model = field_or<std::string>(m, "queue_model", "none", where);
        c.machines.push_back(std::move(p));
    }
    const auto queues = field<nlohmann::json>(j, "queues", "fleet config");
    if (!queues.is_object()) {
        throw ConfigError("fleet config: 'queues' must be an object");
    }
    for (const auto &entry : queues.items()) {
        const std::string &name = entry.key();
        const nlohmann::json &q = entry.value();
        QueueSpec spec;
        spec.knots.clear();
        for (const auto &k : field<nlohmann::json>(q, "knots_minutes", "queue '" + name + "'")) {
            if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number()) {
                throw ConfigError("queue '" + name + "': knots are [probability, minutes] pairs");
            }
            spec.knots.emplace_back(k[0].get<double>(), k[1].get<double>());
        }
        c.queues[name] = std::move(spec);
    }
    if (!c.queues.contains("none")) {
        c.queues["none"] = QueueSpec{};
    }
    if (j.contains("assignments")) {
        if (!j.at("assignments").is_object()) {
            throw ConfigError("fleet config: 'assignments' must be an object");
        }
        for (const auto &entry : j.at("assignments").items()) {
            const std::string &name = entry.key();
            const nlohmann::json &a = entry.value();
            const std::string where = "assignment '" + name + "'";
            c.assignments[name] = {field<std::vector<std::string>>(a, "sequential", where),
                                   field<std::vector<std::string>>(a, "parallel", where),
                                   field<std::string>(a, "queue", where)};
        }
    }
    c.validate();
    return c;
}

FleetConfig FleetConfig::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read fleet config " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("fleet config " + path.string() + " is not valid JSON: " + e.what());
    }
    return from_json(j);
}

nlohmann::json FleetConfig::to_json() const {
    nlohmann::json j;
    j["timing"] = {{"per_job_overhead_s", timing.per_job_overhead},
                   {"session_dispatch_mean_s", timing.session_dispatch_mean},
                   {"readout_multiplier", timing.readout_multiplier},
                   {"calibration_circuits_per_qubit", timing.calibration_circuits_per_qubit}};
    j["machines"] = nlohmann::json::array();
    for (const auto &m : machines) {
        j["machines"].push_back({{"name", m.name},
                                 {"qubits", m.qubits},
                                 {"quantum_volume", m.quantum_volume},
                                 {"clops", m.clops},
                                 {"max_circuits_per_job", m.max_circuits_per_job},
                                 {"queue_model", m.queue_model}});
    }
    j["queues"] = nlohmann::json::object();
    for (const auto &[name, q] : queues) {
        auto &k = j["queues"][name]["knots_minutes"] = nlohmann::json::array();
        for (const auto &[p, minutes] : q.knots) {
            k.push_back({p, minutes});
        }
    }
    j["assignments"] = nlohmann::json::object();
    for (const auto &[name, a] : assignments) {
        j["assignments"][name] = {{"sequential", a.sequential}, {"parallel", a.parallel}, {"queue", a.queue}};
    }
    return j;
}

std::vector<Job> batch(std::span<const Circuit> circuits, std::size_t max_per_job, const JobSpec &spec,
                       std::size_t first_id, std::size_t circuit_offset) {
    if (max_per_job < 1) {
        throw InvalidArgument("max_per_job must be at least 1");
    }
    std::vector<Job> jobs;
    for (std::size_t start = 0; start < circuits.size(); start += max_per_job) {
        Job job;
        job.id = first_id + jobs.size();
        job.first_circuit = circuit_offset + start;
        job.circuit_count = std::min(max_per_job, circuits.size() - start);
        job.spec = spec;
        for (std::size_t i = start; i < start + job.circuit_count; ++i) {
            job.width = std::max(job.width, circuits[i].width());
            job.layers += circuits[i].layer_count();
        }
        jobs.push_back(job);
    }
    return jobs;
}

double execution_seconds(const Job &job, const MachineProfile &machine, const TimingModel &timing) {
    using mitigation::Resilience;
    const double shots = static_cast<double>(job.spec.shots);
    double layer_ops = static_cast<double>(job.layers) * shots;
    switch (job.spec.resilience) {
    case Resilience::None:
        break;
    case Resilience::Readout:
        layer_ops = layer_ops * timing.readout_multiplier +
                    static_cast<double>(timing.calibration_circuits_per_qubit) * job.width * shots;
        break;
    case Resilience::Zne:
        layer_ops *= job.spec.zne.cost_factor();
        break;
    }
    return timing.per_job_overhead + layer_ops / machine.clops;
}

Session::Session(std::size_t index, MachineProfile machine, QueueSpec queue, TimingModel timing, QueuePolicy policy,
                 std::uint64_t seed)
    : index_(index), machine_(std::move(machine)), queue_(std::move(queue)), timing_(timing), policy_(policy),
      seed_(seed) {
    queue_.validate();
}

JobRecord Session::submit(const Job &job, double ready) {
    JobRecord r;
    r.job = job;
    r.machine = machine_.name;
    r.session = index_;
    r.created = ready;
    double delay = 0.0;
    if (policy_ == QueuePolicy::PerJob || submitted_ == 0) {
        delay = queue_delay(queue_, derive_seed(seed_, kQueueStream, job.id));
    } else {
        Rng rng(derive_seed(seed_, kDispatchStream, job.id));
        delay = rng.exponential(timing_.session_dispatch_mean);
    }
    r.running = std::max(ready, free_at_) + delay;
    r.finished = r.running + execution_seconds(job, machine_, timing_);
    free_at_ = r.finished;
    ++submitted_;
    return r;
}

MetricsRecord summarize(std::span<const JobRecord> records) {
    MetricsRecord m;
    for (const auto &r : records) {
        m.qubit_seconds += r.qubit_seconds();
        m.total_execution_seconds += r.execution();
        m.execution_seconds = std::max(m.execution_seconds, r.finished);
        m.pre_execution_seconds.push_back(r.pre_execution());
    }
    return m;
}

std::string_view to_string(Dispatch d) noexcept { return d == Dispatch::Parallel ? "PAR" : "SEQ"; }

Dispatch dispatch_from_string(std::string_view s) {
    if (s == "SEQ" || s == "seq" || s == "sequential") {
        return Dispatch::Sequential;
    }
    if (s == "PAR" || s == "par" || s == "parallel") {
        return Dispatch::Parallel;
    }
    throw InvalidArgument("dispatch must be SEQ or PAR, got '" + std::string(s) + "'");
}

Execution execute(std::span<const Circuit> circuits, std::span<const Job> jobs,
                  std::span<const MachineProfile> machines, const FleetConfig &config,
                  const ExecuteOptions &options) {
    if (machines.empty()) {
        throw InvalidArgument("execute needs at least one machine");
    }
    const bool parallel = options.dispatch == Dispatch::Parallel;
    std::vector<std::vector<std::size_t>> per_machine(parallel ? machines.size() : 1);
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job &job = jobs[i];
        if (job.first_circuit + job.circuit_count > circuits.size()) {
            throw InvalidArgument("job " + std::to_string(job.id) + " addresses circuits beyond the list");
        }
        const std::size_t m = parallel ? job.spec.stream % machines.size() : 0;
        const MachineProfile &machine = machines[m];
        if (job.width > machine.qubits) {
            throw CapacityError("job " + std::to_string(job.id) + " needs " + std::to_string(job.width) +
                                " qubits but " + machine.name + " has " + std::to_string(machine.qubits));
        }
        if (job.circuit_count > machine.max_circuits_per_job) {
            throw CapacityError("job " + std::to_string(job.id) + " has " + std::to_string(job.circuit_count) +
                                " circuits but " + machine.name + " accepts " +
                                std::to_string(machine.max_circuits_per_job));
        }
        per_machine[m].push_back(i);
    }

    Execution out;
    out.jobs.resize(jobs.size());
    for (std::size_t m = 0; m < per_machine.size(); ++m) {
        auto &order = per_machine[m];
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return jobs[a].spec.stream < jobs[b].spec.stream; });
        Session session(m, machines[m], config.queue(machines[m].queue_model), config.timing, options.policy,
                        options.seed);
        for (std::size_t i : order) {
            out.jobs[i] = session.submit(jobs[i], session.free_at());
        }
    }
    out.metrics = summarize(out.jobs);

    if (options.simulate) {
        out.results.resize(circuits.size());
        for (const Job &job : jobs) {
            for (std::size_t c = job.first_circuit; c < job.first_circuit + job.circuit_count; ++c) {
                out.results[c] = mitigation::run(circuits[c], options.run, derive_seed(options.seed, kResultStream, c));
            }
        }
    }
    return out;
}

void write_jobs_csv(std::ostream &out, std::span<const JobRecord> records) {
    const std::vector<std::string> header{"job", "stream", "machine", "session", "circuits", "width",
                                          "shots", "resilience", "created_s", "running_s", "finished_s",
                                          "pre_execution_s", "execution_s", "qubit_seconds"};
    write_csv_row(out, header);
    for (const auto &r : records) {
        const std::vector<std::string> row{std::to_string(r.job.id),
                                           std::to_string(r.job.spec.stream),
                                           r.machine,
                                           std::to_string(r.session),
                                           std::to_string(r.job.circuit_count),
                                           std::to_string(r.job.width),
                                           std::to_string(r.job.spec.shots),
                                           std::to_string(mitigation::to_int(r.job.spec.resilience)),
                                           format_number(r.created),
                                           format_number(r.running),
                                           format_number(r.finished),
                                           format_number(r.pre_execution()),
                                           format_number(r.execution()),
                                           format_number(r.qubit_seconds())};
        write_csv_row(out, row);
    }
}

void write_cdf_csv(std::ostream &out, std::span<const double> pre_execution_seconds) {
    std::vector<double> v(pre_execution_seconds.begin(), pre_execution_seconds.end());
    std::sort(v.begin(), v.end());
    const std::vector<std::string> header{"pre_execution_s", "pre_execution_min", "fraction"};
    write_csv_row(out, header);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::vector<std::string> row{format_number(v[i]), format_number(v[i] / 60.0),
                                           format_number(static_cast<double>(i + 1) / static_cast<double>(v.size()))};
        write_csv_row(out, row);
    }
}

} // namespace qsplit::fleet
