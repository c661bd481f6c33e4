#include "sdmc/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sdmc {

Matrix2 particle_state_matrix(const SecondOrderParams& p) {
    return {{{1.0 - p.phi, p.omega}, {-p.phi, p.omega}}};
}

EigenPair particle_eigenvalues(const SecondOrderParams& p) {
    const double trace = 1.0 - p.phi + p.omega;
    const double det = p.omega;
    const double disc = trace * trace - 4.0 * det;
    if (disc < 0.0) {
        const double re = 0.5 * trace;
        const double im = 0.5 * std::sqrt(-disc);
        return {{re, im}, {re, -im}};
    }
    const double root = std::sqrt(disc);
    const double q = 0.5 * (trace + std::copysign(root, trace));
    if (q == 0.0) return {{0.0, 0.0}, {0.0, 0.0}};
    return {{q, 0.0}, {det / q, 0.0}};
}

ModulusMode parse_modulus_mode(std::string_view name) {
    if (name == "plug-in") return ModulusMode::plug_in;
    if (name == "monte-carlo") return ModulusMode::monte_carlo;
    throw ConfigError("unknown modulus mode: " + std::string(name));
}

ModulusEstimate expected_max_modulus(double omega, double c1, double c2, ModulusMode mode, std::uint64_t samples,
                                     std::uint64_t seed) {
    if (mode == ModulusMode::plug_in) {
        return {particle_eigenvalues({omega, 0.5 * (c1 + c2)}).max_modulus(), 0.0, 0};
    }
    if (samples < 10000) throw ConfigError("monte-carlo mode needs at least 10^4 samples");
    RngStream rng(seed, static_cast<std::uint64_t>(StreamPurpose::analysis));
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        const double m = particle_eigenvalues({omega, c1 * r1 + c2 * r2}).max_modulus();
        sum += m;
        sum_sq += m * m;
    }
    const auto n = static_cast<double>(samples);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), samples};
}

OrderStat order_m_stat(std::span<const double> trajectory, int order, std::size_t window,
                       std::optional<double> threshold) {
    if (order < 1 || order > 3) throw ConfigError("order must be 1, 2 or 3");
    if (window == 0 || trajectory.size() < 2 * window) {
        throw ConfigError("trajectory must hold at least two windows");
    }
    auto power = [order](double x) { return std::pow(x, order); };
    const std::size_t n = trajectory.size();
    double last = 0.0;
    double prev = 0.0;
    for (std::size_t t = n - window; t < n; ++t) last += power(trajectory[t]);
    for (std::size_t t = n - 2 * window; t < n - window; ++t) prev += power(trajectory[t]);
    last /= static_cast<double>(window);
    prev /= static_cast<double>(window);

    OrderStat stat;
    stat.limit_estimate = last;
    stat.previous_mean = prev;
    stat.drift = last - prev;
    if (threshold) {
        stat.threshold = *threshold;
    } else {
        double amplitude = 0.0;
        for (std::size_t t = 0; t < window; ++t) amplitude = std::max(amplitude, std::abs(power(trajectory[t])));
        stat.threshold = 1e-6 * amplitude;
    }
    stat.stabilized = std::abs(stat.drift) < stat.threshold || stat.drift == 0.0;
    return stat;
}

BallVolume ball_volume(double delta, std::size_t dim) {
    if (!(delta > 0.0) || dim == 0) throw ConfigError("ball volume needs delta > 0 and DIM >= 1");
    const auto n = static_cast<double>(dim);
    const double log_v = std::log(2.0) + n * std::log(delta) + n * std::lgamma(0.5) - std::log(n) -
                         std::lgamma(0.5 * n);
    return {std::exp(log_v), log_v};
}

namespace {

void check_deltas(double& d1, double& d2) {
    if (!(d1 > 0.0) || !(d2 > 0.0)) throw ConfigError("delta1 and delta2 must be positive");
    if (d1 > d2) std::swap(d1, d2);
}

}  // namespace

double z_pdf_ldiw(double delta1, double delta2, double z) {
    check_deltas(delta1, delta2);
    const double area = delta1 * delta2;
    if (z < 0.0 || z > delta1 + delta2) return 0.0;
    if (z <= delta1) return z / area;
    if (z <= delta2) return 1.0 / delta2;
    return (delta1 + delta2 - z) / area;
}

double z_cdf_ldiw(double delta1, double delta2, double z) {
    check_deltas(delta1, delta2);
    const double area = delta1 * delta2;
    if (z <= 0.0) return 0.0;
    if (z >= delta1 + delta2) return 1.0;
    if (z <= delta1) return z * z / (2.0 * area);
    if (z <= delta2) return delta1 / (2.0 * delta2) + (z - delta1) / delta2;
    const double rest = delta1 + delta2 - z;
    return 1.0 - rest * rest / (2.0 * area);
}

DiffUniform diff_uniform_dist(double a, double b) {
    if (!(b > a)) throw ConfigError("difference of uniforms needs b > a");
    return {b - a};
}

double DiffUniform::pdf(double z) const {
    const double w = width;
    if (std::abs(z) >= w) return 0.0;
    return (w - std::abs(z)) / (w * w);
}

double DiffUniform::cdf(double z) const {
    const double w = width;
    if (z <= -w) return 0.0;
    if (z >= w) return 1.0;
    if (z <= 0.0) return (w + z) * (w + z) / (2.0 * w * w);
    return 1.0 - (w - z) * (w - z) / (2.0 * w * w);
}

double DiffUniform::flat_pdf(double z) const {
    return std::abs(z) < width ? 1.0 / (2.0 * width) : 0.0;
}

double DiffUniform::flat_cdf(double z) const {
    return std::clamp((z + width) / (2.0 * width), 0.0, 1.0);
}

namespace {

double window_mean(const std::vector<double>& v, bool tail) {
    if (v.empty()) return 0.0;
    const std::size_t w = std::max<std::size_t>(1, v.size() / 10);
    const std::size_t begin = tail ? v.size() - w : 0;
    double s = 0.0;
    for (std::size_t i = begin; i < begin + w; ++i) s += v[i];
    return s / static_cast<double>(w);
}

}  // namespace

double DriftStat::initial_window_abs() const { return window_mean(mean_abs, false); }
double DriftStat::final_window_abs() const { return window_mean(mean_abs, true); }

DriftStat best_drift_stat(const AlgoConfig& cfg, const ObjectiveSpec& objective, std::size_t dimension,
                          std::size_t replicates, std::size_t generations, std::uint64_t seed,
                          const StepFunction& step_fn) {
    if (replicates < 10) throw ConfigError("drift statistics need at least 10 replicates");
    if (dimension >= objective.dim) throw ConfigError("drift dimension out of range");
    const StepFunction run_step = step_fn ? step_fn : StepFunction(&step);
    const Problem problem{&objective};

    std::vector<std::vector<double>> deltas(generations, std::vector<double>(replicates));
    for (std::size_t r = 0; r < replicates; ++r) {
        auto rng = RngSet::for_run(seed, r);
        PopulationState state = initialize(cfg, problem, rng);
        for (std::size_t g = 0; g < generations; ++g) {
            const double before = state.best.position[dimension];
            state = run_step(std::move(state), cfg, problem, rng);
            deltas[g][r] = state.best.position[dimension] - before;
        }
    }

    DriftStat stat;
    stat.dimension = dimension;
    stat.replicates = replicates;
    const auto n = static_cast<double>(replicates);
    for (const auto& row : deltas) {
        double sum = 0.0;
        double sum_abs = 0.0;
        for (double v : row) {
            sum += v;
            sum_abs += std::abs(v);
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (double v : row) ss += (v - mean) * (v - mean);
        stat.mean.push_back(mean);
        stat.stddev.push_back(std::sqrt(ss / (n - 1.0)));
        stat.mean_abs.push_back(sum_abs / n);
    }
    return stat;
}

}  // namespace sdmc
