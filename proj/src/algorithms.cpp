#include "sdmc/algorithms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <utility>

#include <boost/math/special_functions/erf.hpp>

namespace sdmc {

namespace {

constexpr std::array<std::pair<AlgorithmId, std::string_view>, 8> kAlgorithmNames{{
    {AlgorithmId::ldiw_pso, "ldiw-pso"},
    {AlgorithmId::de, "de"},
    {AlgorithmId::gtde, "gtde"},
    {AlgorithmId::slpso, "slpso"},
    {AlgorithmId::gtpso, "gtpso"},
    {AlgorithmId::gtpso_sigma, "gtpso-sigma"},
    {AlgorithmId::partition_sampler, "partition-sampler"},
    {AlgorithmId::uniform_sampler, "uniform-sampler"},
}};

bool is_slpso_family(AlgorithmId id) {
    return id == AlgorithmId::slpso || id == AlgorithmId::gtpso || id == AlgorithmId::gtpso_sigma;
}

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

/// Uniform index in [0, n) skipping the sorted, distinct values in `excluded`.
std::size_t pick_excluding(RngStream& rng, std::size_t n, std::span<const std::size_t> excluded) {
    std::size_t k = rng.index(n - excluded.size());
    for (std::size_t e : excluded) {
        if (k >= e) ++k;
    }
    return k;
}

std::pair<std::size_t, std::size_t> pick_two_excluding(RngStream& rng, std::size_t n, std::size_t i) {
    const std::array<std::size_t, 1> ex1{i};
    const std::size_t r1 = pick_excluding(rng, n, ex1);
    const std::array<std::size_t, 2> ex2{std::min(i, r1), std::max(i, r1)};
    const std::size_t r2 = pick_excluding(rng, n, ex2);
    return {r1, r2};
}

std::pair<std::size_t, std::size_t> pick_two_distinct(RngStream& rng, std::size_t n) {
    const std::size_t k1 = rng.index(n);
    const std::array<std::size_t, 1> ex{k1};
    return {k1, pick_excluding(rng, n, ex)};
}

/// Gaussian draw that records whether it left the oracle's truncation band.
double tracked_gaussian(RngStream& rng, double mean, double stddev, double z_q, PopulationState& state) {
    const double z = rng.gaussian();
    if (stddev > 0.0 && std::abs(z) > z_q) {
        ++state.tail_events;
    }
    return mean + stddev * z;
}

std::vector<double> column_means(const Matrix& m) {
    std::vector<double> mean(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t d = 0; d < m.cols(); ++d) mean[d] += m(i, d);
    }
    for (double& v : mean) v /= static_cast<double>(m.rows());
    return mean;
}

void copy_row(std::span<const double> from, std::span<double> to) {
    std::copy(from.begin(), from.end(), to.begin());
}

void update_pbest(PopulationState& state, std::size_t i) {
    if (state.fitness[i] < state.pbest_fitness[i]) {
        state.pbest_fitness[i] = state.fitness[i];
        copy_row(state.positions.row(i), state.pbest_positions.row(i));
    }
}

void finish_generation(PopulationState& state) {
    ++state.generation;
    update_best_so_far(state);
}

/// Evaluates `trial` for individual `b` and keeps it only on strict
/// improvement. Returns false when the budget is exhausted.
bool gt_accept(PopulationState& state, const Problem& problem, std::size_t b, std::span<const double> trial,
               std::span<const std::size_t> dims, std::span<const double> gt_velocity) {
    const auto f = try_evaluate(state, problem, trial);
    if (!f) return false;
    ++state.counters.gt_trials;
    if (*f < state.fitness[b]) {
        ++state.counters.gt_accepts;
        copy_row(trial, state.positions.row(b));
        state.fitness[b] = *f;
        if (state.has_velocity()) {
            for (std::size_t j = 0; j < dims.size(); ++j) state.velocities(b, dims[j]) = gt_velocity[j];
        }
        if (state.has_pbest()) update_pbest(state, b);
    }
    return true;
}

/// Applies gene-targeting values to individual b, either as one joint trial
/// built from `base` or as one greedy trial per dimension.
void apply_gt_trials(PopulationState& state, const AlgoConfig& cfg, const Problem& problem, RngStream& rng,
                     std::size_t b, std::span<const double> base, std::span<const std::size_t> dims,
                     std::span<const double> values, std::span<const double> gt_velocity, RepairPolicy policy) {
    const auto& domain = problem.domain();
    std::vector<double> trial(base.begin(), base.end());
    std::vector<double> no_velocity;
    if (cfg.gt_evaluation == GtEvaluation::joint) {
        for (std::size_t j = 0; j < dims.size(); ++j) trial[dims[j]] = values[j];
        if (policy == RepairPolicy::resample_uniform && !domain.contains(trial)) ++state.counters.resamples;
        repair(trial, no_velocity, domain, policy, rng);
        gt_accept(state, problem, b, trial, dims, gt_velocity);
        return;
    }
    for (std::size_t j = 0; j < dims.size(); ++j) {
        const auto current = state.positions.row(b);
        trial.assign(current.begin(), current.end());
        trial[dims[j]] = values[j];
        if (policy == RepairPolicy::resample_uniform && !domain.contains(trial)) ++state.counters.resamples;
        repair(trial, no_velocity, domain, policy, rng);
        const std::array<std::size_t, 1> one_dim{dims[j]};
        const std::array<double, 1> one_v{gt_velocity.empty() ? 0.0 : gt_velocity[j]};
        if (!gt_accept(state, problem, b, trial, one_dim, gt_velocity.empty() ? std::span<const double>{} : one_v)) {
            return;
        }
    }
}

}  // namespace

std::string_view algorithm_name(AlgorithmId id) {
    for (const auto& [aid, name] : kAlgorithmNames) {
        if (aid == id) return name;
    }
    return "unknown";
}

AlgorithmId parse_algorithm_id(std::string_view name) {
    for (const auto& [aid, aname] : kAlgorithmNames) {
        if (aname == name) return aid;
    }
    throw ConfigError("unknown algorithm id: " + std::string(name));
}

std::vector<AlgorithmId> studied_algorithms() {
    return {AlgorithmId::ldiw_pso, AlgorithmId::de,          AlgorithmId::gtde,
            AlgorithmId::slpso,    AlgorithmId::gtpso,       AlgorithmId::gtpso_sigma,
            AlgorithmId::partition_sampler};
}

AlgoConfig default_config(AlgorithmId id) {
    AlgoConfig cfg;
    cfg.id = id;
    if (id == AlgorithmId::gtpso_sigma) cfg.sigma_mode = SigmaMode::constant;
    return cfg;
}

std::size_t population_size(const AlgoConfig& cfg, std::size_t dim) {
    if (cfg.population > 0) return cfg.population;
    switch (cfg.id) {
        case AlgorithmId::slpso:
        case AlgorithmId::gtpso:
        case AlgorithmId::gtpso_sigma:
            return slpso_params(dim, 1, cfg).population;
        case AlgorithmId::de:
        case AlgorithmId::gtde:
            return 50;
        case AlgorithmId::ldiw_pso:
            return 40;
        case AlgorithmId::partition_sampler:
        case AlgorithmId::uniform_sampler:
            return 20;
    }
    return 50;
}

void validate(const AlgoConfig& cfg, std::size_t dim) {
    const std::size_t n = population_size(cfg, dim);
    if ((cfg.id == AlgorithmId::de || cfg.id == AlgorithmId::gtde) && n < 4) {
        throw ConfigError("DE variants need a population of at least 4");
    }
    if (n < 1) throw ConfigError("population must not be empty");
    if ((cfg.id == AlgorithmId::gtpso || cfg.id == AlgorithmId::gtpso_sigma) && n < 2) {
        throw ConfigError("gene targeting needs at least 2 particles");
    }
    if (!in_unit_interval(cfg.cr) || !in_unit_interval(cfg.p_m)) {
        throw ConfigError("CR and P_m must lie in [0, 1]");
    }
    if (cfg.gt_f.stddev < 0.0 || cfg.bottleneck.stddev < 0.0 ||
        (cfg.f_distribution && cfg.f_distribution->stddev < 0.0)) {
        throw ConfigError("Gaussian standard deviations must be non-negative");
    }
    if (cfg.t_max < 1) throw ConfigError("T_max must be at least 1");
    if (!(cfg.v_max_fraction > 0.0)) throw ConfigError("v_max fraction must be positive");
    if (cfg.sigma_mode == SigmaMode::constant && !(cfg.sigma > 0.0)) {
        throw ConfigError("constant-sigma mode needs sigma > 0");
    }
    if (!(cfg.split_fraction > 0.0 && cfg.split_fraction < 1.0)) {
        throw ConfigError("split fraction must lie in (0, 1)");
    }
    if (cfg.id == AlgorithmId::partition_sampler && cfg.split_dim >= dim) {
        throw ConfigError("split dimension out of range");
    }
    if (!(cfg.truncation_q > 0.5 && cfg.truncation_q < 1.0)) {
        throw ConfigError("truncation quantile must lie in (0.5, 1)");
    }
    if (cfg.slpso_m == 0 || cfg.beta < 0.0 || cfg.mu < 0.0) {
        throw ConfigError("SLPSO parameters out of range");
    }
}

RngSet RngSet::for_run(std::uint64_t master_seed, std::uint64_t run) {
    return {RngStream::for_run(master_seed, run, StreamPurpose::population),
            RngStream::for_run(master_seed, run, StreamPurpose::gene_targeting)};
}

std::optional<double> try_evaluate(PopulationState& state, const Problem& problem, std::span<const double> x) {
    if (state.eval_count >= problem.eval_limit) {
        ++state.counters.refused_evaluations;
        return std::nullopt;
    }
    const double f = evaluate(*problem.objective, x);
    require_finite(f, problem.objective->name());
    ++state.eval_count;
    return f;
}

double central_normal_quantile(double q) {
    return std::sqrt(2.0) * boost::math::erf_inv(q);
}

// ---------------------------------------------------------------------------

Region partition_region(const BoxDomain& domain, const AlgoConfig& cfg, std::uint64_t generation) {
    Region r{std::vector<double>(domain.lower().begin(), domain.lower().end()),
             std::vector<double>(domain.upper().begin(), domain.upper().end())};
    const std::size_t d = cfg.split_dim;
    const double split = domain.lower(d) + cfg.split_fraction * domain.width(d);
    if (generation % 2 == 0) {
        r.upper[d] = split;
    } else {
        r.lower[d] = split;
    }
    return r;
}

PopulationState initialize(const AlgoConfig& cfg, const Problem& problem, RngSet& rng) {
    const auto& domain = problem.domain();
    const std::size_t dim = problem.dim();
    validate(cfg, dim);
    const std::size_t n = population_size(cfg, dim);
    if (problem.eval_limit < n) {
        throw ConfigError("evaluation budget " + std::to_string(problem.eval_limit) +
                          " is smaller than one generation (" + std::to_string(n) + ")");
    }

    PopulationState state;
    state.positions = Matrix(n, dim);
    state.fitness.assign(n, 0.0);
    const bool pso = cfg.id == AlgorithmId::ldiw_pso || is_slpso_family(cfg.id);
    if (pso) state.velocities = Matrix(n, dim);
    const auto v_max = default_v_max(domain, cfg.v_max_fraction);

    const Region first = partition_region(domain, cfg, 0);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = state.positions.row(i);
        if (cfg.id == AlgorithmId::partition_sampler) {
            for (std::size_t d = 0; d < dim; ++d) x[d] = rng.population.uniform(first.lower[d], first.upper[d]);
        } else {
            uniform_sample_into(domain, rng.population, x);
        }
        if (cfg.id == AlgorithmId::ldiw_pso) {
            for (std::size_t d = 0; d < dim; ++d) state.velocities(i, d) = rng.population.uniform(-v_max[d], v_max[d]);
        }
        state.fitness[i] = *try_evaluate(state, problem, x);
    }
    if (pso) {
        state.pbest_positions = state.positions;
        state.pbest_fitness = state.fitness;
    }
    update_best_so_far(state);
    return state;
}

PopulationState step(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng) {
    switch (cfg.id) {
        case AlgorithmId::ldiw_pso: return step_ldiw_pso(std::move(state), cfg, problem, rng);
        case AlgorithmId::de: return step_de(std::move(state), cfg, problem, rng);
        case AlgorithmId::gtde: return step_gtde(std::move(state), cfg, problem, rng);
        case AlgorithmId::slpso: return step_slpso(std::move(state), cfg, problem, rng);
        case AlgorithmId::gtpso:
        case AlgorithmId::gtpso_sigma: return step_gtpso(std::move(state), cfg, problem, rng);
        case AlgorithmId::partition_sampler: return step_partition_sampler(std::move(state), cfg, problem, rng);
        case AlgorithmId::uniform_sampler: return step_uniform_sampler(std::move(state), cfg, problem, rng);
    }
    throw ConfigError("unknown algorithm");
}

// ---------------------------------------------------------------------------
// LDIW-PSO

double ldiw_inertia(std::uint64_t t, const AlgoConfig& cfg) {
    if (t >= cfg.t_max) return cfg.omega_end;
    const double remaining = static_cast<double>(cfg.t_max - t) / static_cast<double>(cfg.t_max);
    return cfg.omega_end + (cfg.omega_start - cfg.omega_end) * remaining;
}

PopulationState step_ldiw_pso(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng) {
    if (!state.has_velocity() || !state.has_pbest()) {
        throw ConfigError("LDIW-PSO step needs velocity and personal-best state");
    }
    const auto& domain = problem.domain();
    const std::size_t dim = state.dim();
    const double omega = ldiw_inertia(state.generation, cfg);
    const auto v_max = default_v_max(domain, cfg.v_max_fraction);
    const std::vector<double> gbest = state.best.position;
    std::vector<double> old_x(dim);
    std::vector<double> old_v(dim);

    for (std::size_t i = 0; i < state.size(); ++i) {
        auto x = state.positions.row(i);
        auto v = state.velocities.row(i);
        copy_row(x, old_x);
        copy_row(v, old_v);
        for (std::size_t d = 0; d < dim; ++d) {
            const double r1 = rng.population.uniform();
            const double r2 = rng.population.uniform();
            v[d] = ldiw_velocity(omega, v[d], x[d], state.pbest_positions(i, d), gbest[d], cfg.c1, cfg.c2, r1, r2);
        }
        repair(x, v, domain, RepairPolicy::clamp_velocity, rng.population, v_max);
        for (std::size_t d = 0; d < dim; ++d) x[d] += v[d];
        repair(x, v, domain, RepairPolicy::clamp_position, rng.population);
        const auto f = try_evaluate(state, problem, x);
        if (!f) {
            copy_row(old_x, x);
            copy_row(old_v, v);
            break;
        }
        state.fitness[i] = *f;
        update_pbest(state, i);
    }
    finish_generation(state);
    return state;
}

// ---------------------------------------------------------------------------
// DE / GTDE

namespace {

/// One DE/current-to-best/1 generation with synchronous greedy selection.
void de_generation(PopulationState& state, const AlgoConfig& cfg, const Problem& problem, RngStream& rng,
                   std::optional<GaussianParam> f_dist) {
    const auto& domain = problem.domain();
    const std::size_t n = state.size();
    const std::size_t dim = state.dim();
    const std::size_t best = rank_order(state.fitness).front();
    const double z_q = central_normal_quantile(cfg.truncation_q);
    const Matrix current = state.positions;
    std::vector<double> mutant(dim);
    std::vector<double> trial(dim);
    std::vector<double> no_velocity;

    for (std::size_t i = 0; i < n; ++i) {
        const double f = f_dist ? tracked_gaussian(rng, f_dist->mean, f_dist->stddev, z_q, state) : cfg.f;
        const auto [r1, r2] = pick_two_excluding(rng, n, i);
        ++state.counters.mutations;
        if (r1 == r2 || r1 == i || r2 == i) ++state.counters.index_collisions;

        for (std::size_t d = 0; d < dim; ++d) {
            mutant[d] = de_mutant(current(i, d), current(best, d), current(r1, d), current(r2, d), f);
        }
        if (!domain.contains(mutant)) ++state.counters.resamples;
        repair(mutant, no_velocity, domain, RepairPolicy::resample_uniform, rng);

        const std::size_t d_rand = rng.index(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            const double u = rng.uniform();
            trial[d] = (u < cfg.cr || d == d_rand) ? mutant[d] : current(i, d);
        }
        const auto ft = try_evaluate(state, problem, trial);
        if (!ft) break;
        if (*ft < state.fitness[i]) {
            copy_row(trial, state.positions.row(i));
            state.fitness[i] = *ft;
        }
    }
}

}  // namespace

PopulationState step_de(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng) {
    de_generation(state, cfg, problem, rng.population, cfg.f_distribution);
    finish_generation(state);
    return state;
}

std::vector<std::size_t> gt_select_bottleneck_dims(std::size_t dim, const AlgoConfig& cfg, RngStream& rng) {
    std::vector<std::size_t> dims;
    for (std::size_t d = 0; d < dim; ++d) {
        const double u = rng.uniform();
        const double p_j = std::clamp(rng.gaussian(cfg.bottleneck.mean, cfg.bottleneck.stddev), 0.0, 1.0);
        if (u < p_j) dims.push_back(d);
    }
    return dims;
}

PopulationState step_gtde(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng) {
    const std::size_t n = state.size();
    const std::size_t b = rank_order(state.fitness).front();
    const Matrix start = state.positions;

    de_generation(state, cfg, problem, rng.population, cfg.gt_f);

    ++state.counters.gt_applications;
    auto& g = rng.gene_targeting;
    const auto dims = gt_select_bottleneck_dims(state.dim(), cfg, g);
    if (!dims.empty()) {
        const double z_q = central_normal_quantile(cfg.truncation_q);
        const double f = tracked_gaussian(g, cfg.gt_f.mean, cfg.gt_f.stddev, z_q, state);
        const auto [r1, r2] = pick_two_distinct(g, n);
        const auto x_rand = uniform_sample(problem.domain(), g);
        std::vector<double> values(dims.size());
        for (std::size_t j = 0; j < dims.size(); ++j) {
            const std::size_t d = dims[j];
            const double s = g.uniform();
            const double partner = s < cfg.p_m ? x_rand[d] : start(r2, d);
            values[j] = start(b, d) + f * (start(r1, d) - partner);
        }
        apply_gt_trials(state, cfg, problem, g, b, start.row(b), dims, values, {}, RepairPolicy::resample_uniform);
    }
    finish_generation(state);
    return state;
}

// ---------------------------------------------------------------------------
// SLPSO / GTPSO

SlpsoParams slpso_params(std::size_t dim, std::size_t rank, const AlgoConfig& cfg, std::size_t population) {
    const auto d = static_cast<double>(dim);
    const auto m = static_cast<double>(cfg.slpso_m);
    const std::size_t default_n = cfg.slpso_m + static_cast<std::size_t>(std::ceil(0.1 * d));
    const std::size_t n = population > 0 ? population : default_n;
    if (rank < 1 || rank > n) throw ConfigError("SLPSO rank out of range");
    const double epsilon = cfg.beta * d / m;
    const double exponent = cfg.mu * std::log(std::ceil(d / m));
    const double base = 1.0 - static_cast<double>(rank - 1) / static_cast<double>(n);
    return {epsilon, std::pow(base, exponent), default_n};
}

std::vector<std::size_t> rank_order(std::span<const double> fitness) {
    std::vector<std::size_t> order(fitness.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    return order;
}

namespace {

void slpso_generation(PopulationState& state, const AlgoConfig& cfg, const Problem& problem, RngStream& rng) {
    if (!state.has_velocity() || !state.has_pbest()) {
        throw ConfigError("SLPSO step needs velocity and personal-best state");
    }
    const auto& domain = problem.domain();
    const std::size_t n = state.size();
    const std::size_t dim = state.dim();
    const auto order = rank_order(state.fitness);
    const auto mean = column_means(state.positions);
    const Matrix start = state.positions;
    std::vector<double> old_v(dim);

    for (std::size_t r = 1; r < n; ++r) {
        const std::size_t i = order[r];
        const auto params = slpso_params(dim, r + 1, cfg, n);
        auto x = state.positions.row(i);
        auto v = state.velocities.row(i);
        copy_row(v, old_v);
        bool moved = false;
        for (std::size_t d = 0; d < dim; ++d) {
            if (!(rng.uniform() < params.p_learn)) continue;
            const std::size_t k = order[rng.index(r)];
            const double r1 = rng.uniform();
            const double r2 = rng.uniform();
            const double r3 = rng.uniform();
            v[d] = slpso_velocity(v[d], start(i, d), start(k, d), mean[d], params.epsilon, r1, r2, r3);
            x[d] = start(i, d) + v[d];
            moved = true;
        }
        if (!moved) continue;
        repair(x, v, domain, RepairPolicy::clamp_position, rng);
        const auto f = try_evaluate(state, problem, x);
        if (!f) {
            copy_row(start.row(i), x);
            copy_row(old_v, v);
            break;
        }
        state.fitness[i] = *f;
        update_pbest(state, i);
    }
}

}  // namespace

PopulationState step_slpso(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng) {
    slpso_generation(state, cfg, problem, rng.population);
    finish_generation(state);
    return state;
}

PopulationState step_gtpso(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng) {
    if (cfg.sigma_mode == SigmaMode::constant && !(cfg.sigma > 0.0)) {
        throw ConfigError("constant-sigma mode needs sigma > 0");
    }
    const std::size_t n = state.size();
    const std::size_t b = rank_order(state.fitness).front();
    const Matrix start_x = state.positions;
    const Matrix start_v = state.velocities;
    const Matrix start_pbest = state.pbest_positions;
    const auto mean = column_means(start_x);

    slpso_generation(state, cfg, problem, rng.population);

    ++state.counters.gt_applications;
    auto& g = rng.gene_targeting;
    const auto dims = gt_select_bottleneck_dims(state.dim(), cfg, g);
    if (!dims.empty()) {
        const double z_q = central_normal_quantile(cfg.truncation_q);
        const auto [k1, k2] = pick_two_distinct(g, n);
        std::vector<double> values(dims.size());
        std::vector<double> velocity(dims.size());
        for (std::size_t j = 0; j < dims.size(); ++j) {
            const std::size_t d = dims[j];
            double v;
            if (g.uniform() < cfg.p_m) {
                const double r1 = g.uniform();
                const double r2 = g.uniform();
                v = cfg.gt_omega * start_v(b, d) + cfg.gt_c1 * r1 * (start_pbest(k1, d) - start_pbest(k2, d)) +
                    cfg.gt_c2 * r2 * (mean[d] - start_x(b, d));
            } else {
                const double centre = 0.5 * (start_v(k1, d) + start_v(k2, d));
                const double spread = cfg.sigma_mode == SigmaMode::paper
                                          ? 0.5 * std::abs(start_v(k1, d) - start_v(k2, d))
                                          : cfg.sigma;
                v = tracked_gaussian(g, centre, spread, z_q, state);
            }
            velocity[j] = v;
            values[j] = start_x(b, d) + v;
        }
        apply_gt_trials(state, cfg, problem, g, b, start_x.row(b), dims, values, velocity,
                        RepairPolicy::clamp_position);
    }
    finish_generation(state);
    return state;
}

// ---------------------------------------------------------------------------
// Samplers

namespace {

void resample_all(PopulationState& state, const Problem& problem, RngStream& rng, std::span<const double> lower,
                  std::span<const double> upper) {
    std::vector<double> x(state.dim());
    for (std::size_t i = 0; i < state.size(); ++i) {
        for (std::size_t d = 0; d < state.dim(); ++d) x[d] = rng.uniform(lower[d], upper[d]);
        const auto f = try_evaluate(state, problem, x);
        if (!f) break;
        copy_row(x, state.positions.row(i));
        state.fitness[i] = *f;
    }
}

}  // namespace

PopulationState step_partition_sampler(PopulationState state, const AlgoConfig& cfg, const Problem& problem,
                                       RngSet& rng) {
    const Region region = partition_region(problem.domain(), cfg, state.generation + 1);
    resample_all(state, problem, rng.population, region.lower, region.upper);
    finish_generation(state);
    return state;
}

PopulationState step_uniform_sampler(PopulationState state, const AlgoConfig&, const Problem& problem, RngSet& rng) {
    resample_all(state, problem, rng.population, problem.domain().lower(), problem.domain().upper());
    finish_generation(state);
    return state;
}

}  // namespace sdmc
