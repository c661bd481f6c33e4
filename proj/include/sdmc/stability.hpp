#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sdmc/algorithms.hpp"
#include "sdmc/benchmarks.hpp"
#include "sdmc/core.hpp"

namespace sdmc {

/// Second-order model of one PSO particle coordinate with pbest = gbest.
struct SecondOrderParams {
    double omega = 0.0;
    /// Combined attraction c1*r1 + c2*r2.
    double phi = 0.0;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

/// [[1 - phi, omega], [-phi, omega]] acting on (x, v).
Matrix2 particle_state_matrix(const SecondOrderParams& params);

struct EigenPair {
    std::complex<double> first;
    std::complex<double> second;

    [[nodiscard]] double max_modulus() const { return std::max(std::abs(first), std::abs(second)); }
};

/// Roots of lambda^2 - (1 - phi + omega) lambda + omega. Real roots use the
/// cancellation-free form of the quadratic formula.
EigenPair particle_eigenvalues(const SecondOrderParams& params);

enum class ModulusMode { plug_in, monte_carlo };

ModulusMode parse_modulus_mode(std::string_view name);

struct ModulusEstimate {
    double value = 0.0;
    /// Zero in plug-in mode.
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

/// E[max |lambda|] for inertia omega and coefficients c1, c2.
/// plug-in evaluates at phi = (c1 + c2) / 2; monte-carlo averages over
/// r1, r2 ~ U[0,1] and needs at least 10^4 samples.
ModulusEstimate expected_max_modulus(double omega, double c1, double c2, ModulusMode mode,
                                     std::uint64_t samples = 0, std::uint64_t seed = 0);

struct OrderStat {
    /// Mean of x^M over the last window.
    double limit_estimate = 0.0;
    double previous_mean = 0.0;
    double drift = 0.0;
    double threshold = 0.0;
    bool stabilized = false;
};

/// Windowed M-th order statistic of a trajectory. The default threshold is
/// 1e-6 times the largest |x^M| seen in the first window.
OrderStat order_m_stat(std::span<const double> trajectory, int order, std::size_t window,
                       std::optional<double> threshold = std::nullopt);

struct BallVolume {
    double value = 0.0;
    double log_value = 0.0;
};

/// Volume of the DIM-ball of radius delta, computed in log space.
BallVolume ball_volume(double delta, std::size_t dim);

/// Density of Z = D1 + D2 with D1 ~ U[0, delta1], D2 ~ U[0, delta2].
double z_pdf_ldiw(double delta1, double delta2, double z);
double z_cdf_ldiw(double delta1, double delta2, double z);

/// Distribution of X1 - X2 for i.i.d. X1, X2 uniform on an interval of width
/// b - a, alongside the flat density 1/(2w) on (-w, w) for comparison.
struct DiffUniform {
    double width = 1.0;

    [[nodiscard]] double pdf(double z) const;
    [[nodiscard]] double cdf(double z) const;
    [[nodiscard]] double flat_pdf(double z) const;
    [[nodiscard]] double flat_cdf(double z) const;
};

DiffUniform diff_uniform_dist(double a, double b);

/// Per-generation statistics of the best-so-far displacement in one
/// coordinate across replicate runs.
struct DriftStat {
    std::size_t dimension = 0;
    std::size_t replicates = 0;
    /// Index g holds the displacement from generation g to g + 1.
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<double> mean_abs;

    /// Mean of mean_abs over the first / last 10% of generations.
    [[nodiscard]] double initial_window_abs() const;
    [[nodiscard]] double final_window_abs() const;
};

using StepFunction = std::function<PopulationState(PopulationState, const AlgoConfig&, const Problem&, RngSet&)>;

/// Runs `replicates` seeded runs for `generations` steps; replicate r uses the
/// streams of run r under `seed`, so two algorithms given the same seed are
/// paired.
DriftStat best_drift_stat(const AlgoConfig& cfg, const ObjectiveSpec& objective, std::size_t dimension,
                          std::size_t replicates, std::size_t generations, std::uint64_t seed,
                          const StepFunction& step_fn = {});

}  // namespace sdmc
