#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sdmc/algorithms.hpp"
#include "sdmc/benchmarks.hpp"
#include "sdmc/scope.hpp"

namespace sdmc {

struct Instrumentation {
    bool scope_trace = false;
    /// First generation whose scope M(t) is recorded.
    std::uint64_t scope_from_generation = 1;
    bool std_trace = false;
    std::size_t std_dim = 0;
    bool snapshots = false;
    std::vector<std::uint64_t> snapshot_generations{7, 9, 99};
};

struct ExperimentConfig {
    AlgoConfig algorithm;
    /// Leaves algorithm.t_max alone when false; otherwise T_max is derived
    /// from the budget.
    bool auto_t_max = true;
    FunctionId function = FunctionId::sphere;
    std::size_t dim = 10;
    /// 0 selects 5000 * dim.
    std::uint64_t budget = 0;
    std::size_t runs = 30;
    std::uint64_t seed = 1;
    Instrumentation instrument;
    /// Records are written here when non-empty.
    std::string output;

    [[nodiscard]] std::uint64_t effective_budget() const { return budget > 0 ? budget : 5000 * dim; }
};

struct CurvePoint {
    std::uint64_t eval_count = 0;
    double best_fitness = 0.0;

    bool operator==(const CurvePoint&) const = default;
};

struct StdPoint {
    std::uint64_t eval_count = 0;
    std::uint64_t generation = 0;
    double stddev = 0.0;

    bool operator==(const StdPoint&) const = default;
};

struct Snapshot {
    std::uint64_t generation = 0;
    Matrix positions;
};

struct RunRecord {
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    /// Best-so-far after initialization and after every generation.
    std::vector<CurvePoint> curve;
    double final_best = 0.0;
    std::optional<ScopeTrace> scope;
    std::size_t std_dim = 0;
    std::vector<StdPoint> std_trace;
    std::vector<Snapshot> snapshots;
    /// Evaluations spent by initialization (entry 0) and each generation.
    std::vector<std::uint64_t> eval_ledger;
    /// The last generation stopped part-way because the budget ran out.
    bool budget_cut = false;
    std::uint64_t generations = 0;
    std::uint64_t tail_events = 0;
    StepCounters counters;
};

/// Throws ConfigError for invalid configs (runs = 0, budget below one
/// generation, bad algorithm parameters, ...).
void validate(const ExperimentConfig& config);

/// Algorithm config with T_max resolved against the budget.
AlgoConfig resolved_algorithm(const ExperimentConfig& config);

/// One seeded trial: streams of run `run_index` under config.seed.
RunRecord run_single(const ExperimentConfig& config, std::size_t run_index);

/// All runs, in parallel across runs (SDMC_THREADS caps the thread count).
/// Writes records to config.output when it is set.
std::vector<RunRecord> run_trials(const ExperimentConfig& config);

/// Recorded per-generation std of the configured dimension.
const std::vector<StdPoint>& dim_std_trace(const RunRecord& record);

/// Mean std over points whose eval_count lies in [from, to].
double mean_std_in_eval_range(const std::vector<StdPoint>& trace, std::uint64_t from, std::uint64_t to);

/// Parses the JSON config format; unknown keys are rejected.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace sdmc
