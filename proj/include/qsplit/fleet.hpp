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
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qsplit/circuit.hpp"
#include "qsplit/mitigation.hpp"
#include "qsplit/simulator.hpp"

namespace qsplit::fleet {

/// Piecewise-linear inverse CDF over queueing delay. Knots are
/// (cumulative probability, delay in minutes); the first probability is 0,
/// the last is 1, probabilities strictly increase and delays never decrease.
struct QueueSpec {
    std::vector<std::pair<double, double>> knots{{0.0, 0.0}, {1.0, 0.0}};

    /// Throws ConfigError.
    void validate() const;
    [[nodiscard]] double quantile_minutes(double p) const;
};

/// One inverse-CDF draw, in seconds.
double queue_delay(const QueueSpec &spec, std::uint64_t seed);

struct MachineProfile {
    std::string name;
    int qubits = 1;
    int quantum_volume = 0;
    /// Circuit layer operations per second.
    double clops = 1.0;
    std::size_t max_circuits_per_job = 1000;
    /// Key into FleetConfig::queues.
    std::string queue_model = "none";

    void validate() const;
};

struct TimingModel {
    double per_job_overhead = 30.0;
    /// Mean of the exponential dispatch delay for jobs after the first in a
    /// session.
    double session_dispatch_mean = 35.0;
    /// Runtime multiplier at resilience 1 (modeled, not measured).
    double readout_multiplier = 1.3;
    /// Calibration circuits charged per job and per qubit at resilience 1.
    int calibration_circuits_per_qubit = 2;

    void validate() const;
};

/// Machines used by one workload family. Sequential dispatch uses the first
/// entry of `sequential`; parallel dispatch maps stream s to
/// parallel[s mod size].
struct Assignment {
    std::vector<std::string> sequential;
    std::vector<std::string> parallel;
    std::string queue;
};

struct FleetConfig {
    TimingModel timing;
    std::vector<MachineProfile> machines;
    std::map<std::string, QueueSpec> queues;
    std::map<std::string, Assignment> assignments;

    /// Throws ConfigError on any inconsistency (unknown machine or queue
    /// names, duplicates, invalid profiles).
    void validate() const;
    [[nodiscard]] const MachineProfile &machine(std::string_view name) const;
    [[nodiscard]] const QueueSpec &queue(std::string_view name) const;
    [[nodiscard]] const Assignment &assignment(std::string_view workload) const;
    /// Profiles named by an assignment, with queue_model set to the
    /// assignment's queue.
    [[nodiscard]] std::vector<MachineProfile> machines_for(std::string_view workload, bool parallel) const;

    /// Shipped defaults: the data/fleet.json contents.
    static FleetConfig builtin();
    static FleetConfig from_json(const nlohmann::json &j);
    /// Throws ConfigError for unreadable files or malformed JSON.
    static FleetConfig load(const std::filesystem::path &path);
    [[nodiscard]] nlohmann::json to_json() const;
};

struct JobSpec {
    /// Shots charged by the timing model (results may still be exact).
    std::uint64_t shots = 4000;
    mitigation::Resilience resilience = mitigation::Resilience::None;
    mitigation::ZneSchedule zne;
    std::size_t stream = 0;
};

/// A contiguous slice of a circuit list submitted together.
struct Job {
    std::size_t id = 0;
    std::size_t first_circuit = 0;
    std::size_t circuit_count = 0;
    /// Widest circuit in the job.
    int width = 0;
    /// Σ layer_count over the job's circuits.
    long long layers = 0;
    JobSpec spec;
};

/// Splits circuits[0..n) into ceil(n / max_per_job) jobs in order. Job ids
/// start at `first_id`; circuit indices are offset by `circuit_offset`.
std::vector<Job> batch(std::span<const Circuit> circuits, std::size_t max_per_job, const JobSpec &spec,
                       std::size_t first_id = 0, std::size_t circuit_offset = 0);

/// Seconds a job occupies the machine: overhead + layers·shots·multiplier /
/// CLOPS, plus calibration circuits at resilience 1.
double execution_seconds(const Job &job, const MachineProfile &machine, const TimingModel &timing);

struct JobRecord {
    Job job;
    std::string machine;
    std::size_t session = 0;
    double created = 0.0;
    double running = 0.0;
    double finished = 0.0;

    [[nodiscard]] double pre_execution() const noexcept { return running - created; }
    [[nodiscard]] double execution() const noexcept { return finished - running; }
    [[nodiscard]] double qubit_seconds() const noexcept { return job.width * execution(); }
};

enum class QueuePolicy {
    /// Only the first job waits in the queue; later jobs pay a dispatch delay.
    Session,
    /// Every job waits in the queue.
    PerJob,
};

/// Serial execution context on one machine. Delays are drawn from seeds
/// derived from the job id, so a job sees the same delays whichever session
/// runs it.
class Session {
  public:
    Session(std::size_t index, MachineProfile machine, QueueSpec queue, TimingModel timing, QueuePolicy policy,
            std::uint64_t seed);

    /// Runs `job`, created at `ready`, after any job already in the session.
    JobRecord submit(const Job &job, double ready);
    [[nodiscard]] double free_at() const noexcept { return free_at_; }
    [[nodiscard]] const MachineProfile &machine() const noexcept { return machine_; }

  private:
    std::size_t index_;
    MachineProfile machine_;
    QueueSpec queue_;
    TimingModel timing_;
    QueuePolicy policy_;
    std::uint64_t seed_;
    std::size_t submitted_ = 0;
    double free_at_ = 0.0;
};

struct MetricsRecord {
    double quality = 0.0;
    double qubit_seconds = 0.0;
    /// Makespan: last finish time.
    double execution_seconds = 0.0;
    /// Σ per-job running-to-finished time.
    double total_execution_seconds = 0.0;
    std::vector<double> pre_execution_seconds;
    /// Wall-clock seconds of classical pre/post-processing.
    double classical_overhead_seconds = 0.0;
};

MetricsRecord summarize(std::span<const JobRecord> records);

enum class Dispatch { Sequential, Parallel };
std::string_view to_string(Dispatch d) noexcept;
Dispatch dispatch_from_string(std::string_view s);

struct ExecuteOptions {
    Dispatch dispatch = Dispatch::Sequential;
    QueuePolicy policy = QueuePolicy::PerJob;
    std::uint64_t seed = 0;
    /// Settings circuits are simulated with.
    mitigation::RunSettings run;
    /// False skips simulation; only the timeline is produced.
    bool simulate = true;
};

struct Execution {
    std::vector<JobRecord> jobs;
    /// Indexed like the circuit list; empty when simulation was skipped.
    std::vector<Distribution> results;
    MetricsRecord metrics;
};

/// Sequential: every job runs on machines[0] in list order. Parallel: each
/// stream s runs on machines[s mod size], one session per machine; within a
/// machine, jobs run in (stream, list) order and each job is created when the
/// previous one on that machine finishes. Circuit i is simulated with seed
/// derive_seed(seed, i), so results do not depend on dispatch.
/// Throws CapacityError when a job is wider than its machine or larger than
/// its per-job cap.
Execution execute(std::span<const Circuit> circuits, std::span<const Job> jobs,
                  std::span<const MachineProfile> machines, const FleetConfig &config,
                  const ExecuteOptions &options);

/// Per-job timeline: id, stream, machine, session, circuits, width, shots,
/// resilience, created, running, finished, pre_execution, execution,
/// qubit_seconds.
void write_jobs_csv(std::ostream &out, std::span<const JobRecord> records);
/// Empirical CDF of pre-execution delays: seconds, minutes, fraction.
void write_cdf_csv(std::ostream &out, std::span<const double> pre_execution_seconds);

} // namespace qsplit::fleet
