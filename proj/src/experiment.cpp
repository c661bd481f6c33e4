#include "sdmc/experiment.hpp"

#include <algorithm>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <omp.h>

#include "sdmc/coverage_kernel.hpp"
#include "sdmc/report.hpp"

namespace sdmc {

void validate(const ExperimentConfig& config) {
    if (config.runs < 1) throw ConfigError("runs must be at least 1");
    if (config.dim < 1) throw ConfigError("dim must be at least 1");
    validate(config.algorithm, config.dim);
    const std::size_t n = population_size(config.algorithm, config.dim);
    if (config.effective_budget() < n) {
        throw ConfigError("budget " + std::to_string(config.effective_budget()) +
                          " cannot pay for one generation of " + std::to_string(n) + " evaluations");
    }
    if (config.instrument.std_trace && config.instrument.std_dim >= config.dim) {
        throw ConfigError("std dimension out of range");
    }
}

AlgoConfig resolved_algorithm(const ExperimentConfig& config) {
    AlgoConfig cfg = config.algorithm;
    if (config.auto_t_max) {
        const std::uint64_t n = population_size(cfg, config.dim);
        cfg.t_max = std::max<std::uint64_t>(1, config.effective_budget() / n - 1);
    }
    return cfg;
}

RunRecord run_single(const ExperimentConfig& config, std::size_t run_index) {
    validate(config);
    const AlgoConfig cfg = resolved_algorithm(config);
    const ObjectiveSpec objective = make_objective(config.function, config.dim);
    const Problem problem{&objective, config.effective_budget()};
    auto rng = RngSet::for_run(config.seed, run_index);
    const auto& ins = config.instrument;
    const std::set<std::uint64_t> snap_at(ins.snapshot_generations.begin(), ins.snapshot_generations.end());

    RunRecord rec;
    rec.run_index = run_index;
    rec.seed = config.seed;
    rec.std_dim = ins.std_dim;
    if (ins.scope_trace) rec.scope = ScopeTrace{objective.domain, ins.scope_from_generation, {}};

    auto observe = [&](const PopulationState& s, std::uint64_t spent) {
        rec.curve.push_back({s.eval_count, s.best.fitness});
        rec.eval_ledger.push_back(spent);
        if (ins.std_trace) rec.std_trace.push_back({s.eval_count, s.generation, population_std(s.positions, ins.std_dim)});
        if (ins.snapshots && snap_at.contains(s.generation)) rec.snapshots.push_back({s.generation, s.positions});
    };

    PopulationState state = initialize(cfg, problem, rng);
    observe(state, state.eval_count);

    // Guards against configurations that can stall without spending budget.
    constexpr std::uint64_t kMaxIdleGenerations = 10000;
    std::uint64_t idle = 0;
    while (state.eval_count < problem.eval_limit && idle < kMaxIdleGenerations) {
        if (rec.scope && state.generation + 1 >= ins.scope_from_generation) {
            if (rec.scope->generations.empty()) rec.scope->first_generation = state.generation + 1;
            rec.scope->push(reachable_scope(cfg, state, objective.domain));
        }
        const std::uint64_t before = state.eval_count;
        state = step(std::move(state), cfg, problem, rng);
        const std::uint64_t spent = state.eval_count - before;
        idle = spent == 0 ? idle + 1 : 0;
        observe(state, spent);
    }

    rec.final_best = state.best.fitness;
    rec.generations = state.generation + 1;
    rec.budget_cut = state.counters.refused_evaluations > 0;
    rec.tail_events = state.tail_events;
    rec.counters = state.counters;
    return rec;
}

std::vector<RunRecord> run_trials(const ExperimentConfig& config) {
    validate(config);
    std::vector<RunRecord> records(config.runs);
    const int env_threads = threads_from_env();
    const int threads = env_threads > 0 ? env_threads : omp_get_max_threads();
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(config.runs); ++r) {
        try {
            records[static_cast<std::size_t>(r)] = run_single(config, static_cast<std::size_t>(r));
        } catch (...) {
#pragma omp critical(sdmc_run_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    if (!config.output.empty()) write_records(config.output, records);
    return records;
}

const std::vector<StdPoint>& dim_std_trace(const RunRecord& record) { return record.std_trace; }

double mean_std_in_eval_range(const std::vector<StdPoint>& trace, std::uint64_t from, std::uint64_t to) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& p : trace) {
        if (p.eval_count >= from && p.eval_count <= to) {
            sum += p.stddev;
            ++n;
        }
    }
    if (n == 0) throw RuntimeError("no std samples in the requested evaluation range");
    return sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// JSON config

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

GaussianParam parse_gaussian(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be an object with mean and std");
    reject_unknown(j, {"mean", "std"}, where);
    return {j.at("mean").get<double>(), j.at("std").get<double>()};
}

AlgoConfig parse_algorithm(const json& j) {
    if (j.is_string()) return default_config(parse_algorithm_id(j.get<std::string>()));
    if (!j.is_object() || !j.contains("id")) throw ConfigError("algorithm must be an id string or an object with 'id'");
    reject_unknown(j,
                   {"id", "population", "f", "f_distribution", "cr", "gt_f", "p_m", "bottleneck", "gt_evaluation",
                    "c1", "c2", "omega_start", "omega_end", "t_max", "v_max_fraction", "beta", "m", "mu", "gt_omega",
                    "gt_c1", "gt_c2", "sigma_mode", "sigma", "split_dim", "split_fraction", "truncation_q"},
                   "algorithm");
    AlgoConfig cfg = default_config(parse_algorithm_id(j.at("id").get<std::string>()));
    auto num = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    };
    num("population", cfg.population);
    num("f", cfg.f);
    if (j.contains("f_distribution")) cfg.f_distribution = parse_gaussian(j.at("f_distribution"), "f_distribution");
    num("cr", cfg.cr);
    if (j.contains("gt_f")) cfg.gt_f = parse_gaussian(j.at("gt_f"), "gt_f");
    num("p_m", cfg.p_m);
    if (j.contains("bottleneck")) cfg.bottleneck = parse_gaussian(j.at("bottleneck"), "bottleneck");
    if (j.contains("gt_evaluation")) {
        const auto mode = j.at("gt_evaluation").get<std::string>();
        if (mode == "joint") {
            cfg.gt_evaluation = GtEvaluation::joint;
        } else if (mode == "per-dimension") {
            cfg.gt_evaluation = GtEvaluation::per_dimension;
        } else {
            throw ConfigError("gt_evaluation must be 'joint' or 'per-dimension'");
        }
    }
    num("c1", cfg.c1);
    num("c2", cfg.c2);
    num("omega_start", cfg.omega_start);
    num("omega_end", cfg.omega_end);
    num("t_max", cfg.t_max);
    num("v_max_fraction", cfg.v_max_fraction);
    num("beta", cfg.beta);
    num("m", cfg.slpso_m);
    num("mu", cfg.mu);
    num("gt_omega", cfg.gt_omega);
    num("gt_c1", cfg.gt_c1);
    num("gt_c2", cfg.gt_c2);
    if (j.contains("sigma_mode")) {
        const auto mode = j.at("sigma_mode").get<std::string>();
        if (mode == "paper") {
            cfg.sigma_mode = SigmaMode::paper;
        } else if (mode == "constant") {
            cfg.sigma_mode = SigmaMode::constant;
        } else {
            throw ConfigError("sigma_mode must be 'paper' or 'constant'");
        }
    }
    num("sigma", cfg.sigma);
    num("split_dim", cfg.split_dim);
    num("split_fraction", cfg.split_fraction);
    num("truncation_q", cfg.truncation_q);
    return cfg;
}

Instrumentation parse_instrument(const json& j) {
    reject_unknown(j, {"scope_trace", "scope_from", "std_trace", "std_dim", "snapshots", "snapshot_generations"},
                   "instrument");
    Instrumentation ins;
    if (j.contains("scope_trace")) ins.scope_trace = j.at("scope_trace").get<bool>();
    if (j.contains("scope_from")) ins.scope_from_generation = j.at("scope_from").get<std::uint64_t>();
    if (j.contains("std_trace")) ins.std_trace = j.at("std_trace").get<bool>();
    if (j.contains("std_dim")) ins.std_dim = j.at("std_dim").get<std::size_t>();
    if (j.contains("snapshots")) ins.snapshots = j.at("snapshots").get<bool>();
    if (j.contains("snapshot_generations")) {
        ins.snapshot_generations = j.at("snapshot_generations").get<std::vector<std::uint64_t>>();
    }
    return ins;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, {"algorithm", "function", "dim", "budget", "runs", "seed", "instrument", "output"}, "config");
    try {
        ExperimentConfig cfg;
        cfg.algorithm = parse_algorithm(j.at("algorithm"));
        cfg.auto_t_max = !(j.at("algorithm").is_object() && j.at("algorithm").contains("t_max"));
        cfg.function = parse_function_id(j.at("function").get<std::string>());
        cfg.dim = j.at("dim").get<std::size_t>();
        if (j.contains("budget")) cfg.budget = j.at("budget").get<std::uint64_t>();
        if (j.contains("runs")) {
            const auto runs = j.at("runs").get<std::int64_t>();
            if (runs < 1) throw ConfigError("runs must be at least 1");
            cfg.runs = static_cast<std::size_t>(runs);
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("instrument")) cfg.instrument = parse_instrument(j.at("instrument"));
        if (j.contains("output")) cfg.output = j.at("output").get<std::string>();
        validate(cfg);
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_experiment_config(buf.str());
}

}  // namespace sdmc
