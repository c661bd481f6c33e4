#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sdmc/benchmarks.hpp"
#include "sdmc/core.hpp"

namespace sdmc {

enum class AlgorithmId {
    ldiw_pso,
    de,
    gtde,
    slpso,
    gtpso,
    gtpso_sigma,
    partition_sampler,
    /// Positive control: every generation is a fresh uniform sample of S.
    uniform_sampler,
};

std::string_view algorithm_name(AlgorithmId id);
AlgorithmId parse_algorithm_id(std::string_view name);
/// The seven optimizers and samplers studied (excludes the uniform control).
std::vector<AlgorithmId> studied_algorithms();

struct GaussianParam {
    double mean = 0.0;
    double stddev = 0.0;
};

/// Which formula drives the Gaussian velocity resample in GTPSO.
enum class SigmaMode {
    /// std = |v_k1 - v_k2| / 2
    paper,
    /// std = sigma
    constant,
};

/// How gene targeting spends fitness evaluations.
enum class GtEvaluation {
    /// One trial vector covering all bottleneck dimensions.
    joint,
    /// One trial per bottleneck dimension, accepted greedily in turn.
    per_dimension,
};

struct AlgoConfig {
    AlgorithmId id = AlgorithmId::de;
    /// 0 selects the algorithm default (see population_size()).
    std::size_t population = 0;

    // DE
    double f = 0.5;
    /// When set, plain DE draws F per individual from this Gaussian.
    std::optional<GaussianParam> f_distribution;
    double cr = 0.9;

    // GTDE (F distribution also drives its DE phase)
    GaussianParam gt_f{0.7, 0.5};
    double p_m = 0.5;
    GaussianParam bottleneck{0.1, 0.01};
    GtEvaluation gt_evaluation = GtEvaluation::joint;

    // LDIW-PSO
    double c1 = 2.0;
    double c2 = 2.0;
    double omega_start = 0.9;
    double omega_end = 0.4;
    std::uint64_t t_max = 1000;
    double v_max_fraction = 0.2;

    // SLPSO
    double beta = 0.01;
    std::size_t slpso_m = 100;
    double mu = 0.5;

    // GTPSO
    double gt_omega = 0.4;
    double gt_c1 = 2.0;
    double gt_c2 = 2.0;
    SigmaMode sigma_mode = SigmaMode::paper;
    double sigma = 0.1;

    // Partition sampler
    std::size_t split_dim = 0;
    double split_fraction = 0.5;

    /// Central quantile at which unbounded Gaussian factors are truncated by
    /// the scope oracle; draws outside it are counted as tail events.
    double truncation_q = 0.9987;
};

/// Defaults for `id`; gtpso-sigma switches to the constant-sigma mode.
AlgoConfig default_config(AlgorithmId id);

/// Throws ConfigError when `cfg` is inconsistent with itself or with `dim`.
void validate(const AlgoConfig& cfg, std::size_t dim);

/// Effective population size: cfg.population if set, otherwise
/// M + ceil(0.1 DIM) for the SLPSO family, 50 for DE variants, 40 for
/// LDIW-PSO and 20 for the samplers.
std::size_t population_size(const AlgoConfig& cfg, std::size_t dim);

/// Objective plus the evaluation budget; evaluations beyond `eval_limit` are
/// refused and the affected individual keeps its previous state.
struct Problem {
    const ObjectiveSpec* objective = nullptr;
    std::uint64_t eval_limit = UINT64_MAX;

    [[nodiscard]] const BoxDomain& domain() const { return objective->domain; }
    [[nodiscard]] std::size_t dim() const { return objective->dim; }
};

/// Population update and gene-targeting draws come from separate streams.
struct RngSet {
    RngStream population;
    RngStream gene_targeting;

    static RngSet for_run(std::uint64_t master_seed, std::uint64_t run);
};

/// Evaluates x if budget remains, counting it in state.eval_count.
std::optional<double> try_evaluate(PopulationState& state, const Problem& problem, std::span<const double> x);

/// Generation 0: uniform positions (the partition sampler uses its first
/// region), velocities and personal bests where the algorithm needs them.
PopulationState initialize(const AlgoConfig& cfg, const Problem& problem, RngSet& rng);

/// One generation of cfg.id.
PopulationState step(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng);

// ---------------------------------------------------------------------------
// LDIW-PSO

/// Linearly decreasing inertia; t beyond T_max clamps to omega_end.
double ldiw_inertia(std::uint64_t t, const AlgoConfig& cfg);

/// Unclamped velocity update for one coordinate.
inline double ldiw_velocity(double omega, double v, double x, double pbest, double gbest, double c1, double c2,
                            double r1, double r2) {
    return omega * v + c1 * r1 * (pbest - x) + c2 * r2 * (gbest - x);
}

PopulationState step_ldiw_pso(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng);

// ---------------------------------------------------------------------------
// DE / GTDE

/// DE/current-to-best/1 mutant coordinate.
inline double de_mutant(double x_i, double x_best, double x_r1, double x_r2, double f) {
    return x_i + f * (x_best - x_i) + f * (x_r1 - x_r2);
}

PopulationState step_de(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng);

/// Dimension d is a bottleneck iff u < P_j with u ~ U[0,1] and
/// P_j ~ Gaussian(bottleneck.mean, bottleneck.stddev) clamped to [0,1].
std::vector<std::size_t> gt_select_bottleneck_dims(std::size_t dim, const AlgoConfig& cfg, RngStream& rng);

PopulationState step_gtde(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng);

// ---------------------------------------------------------------------------
// SLPSO / GTPSO

struct SlpsoParams {
    double epsilon;
    double p_learn;
    std::size_t population;
};

/// epsilon, learning probability of the particle at 1-based `rank` among
/// `population` particles, and the default population size for `dim`.
/// `population` = 0 uses the default size.
SlpsoParams slpso_params(std::size_t dim, std::size_t rank, const AlgoConfig& cfg, std::size_t population = 0);

inline double slpso_velocity(double v, double x_i, double x_k, double x_mean, double epsilon, double r1, double r2,
                             double r3) {
    return r1 * v + r2 * (x_k - x_i) + epsilon * r3 * (x_mean - x_i);
}

/// The same update split into a pull towards gbest plus a random offset of
/// the demonstrator from gbest. Algebraically equal to slpso_velocity.
inline double slpso_velocity_decomposed(double v, double x_i, double x_k, double x_gbest, double x_mean,
                                        double epsilon, double r1, double r2, double r3) {
    return r1 * v + r2 * (x_gbest - x_i) + r2 * (x_k - x_gbest) + epsilon * r3 * (x_mean - x_i);
}

/// Indices sorted best to worst by fitness; ties keep the lower index first.
std::vector<std::size_t> rank_order(std::span<const double> fitness);

PopulationState step_slpso(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng);

/// SLPSO step followed by gene targeting on the incumbent best particle.
/// cfg.sigma_mode selects the Gaussian std rule.
PopulationState step_gtpso(PopulationState state, const AlgoConfig& cfg, const Problem& problem, RngSet& rng);

// ---------------------------------------------------------------------------
// Samplers

/// Region sampled at generation `generation`: B (below the split plane) on
/// even generations, C = S \ B on odd ones. Returned as [lower, upper] bounds.
struct Region {
    std::vector<double> lower;
    std::vector<double> upper;
};
Region partition_region(const BoxDomain& domain, const AlgoConfig& cfg, std::uint64_t generation);

PopulationState step_partition_sampler(PopulationState state, const AlgoConfig& cfg, const Problem& problem,
                                       RngSet& rng);
PopulationState step_uniform_sampler(PopulationState state, const AlgoConfig& cfg, const Problem& problem,
                                     RngSet& rng);

/// Two-sided standard-normal quantile z with P(|Z| <= z) = q.
double central_normal_quantile(double q);

}  // namespace sdmc
