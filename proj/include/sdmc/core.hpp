#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdmc/rng.hpp"

namespace sdmc {

/// Invalid configuration or arguments (CLI exit code 1).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Failure while a run or analysis is executing (CLI exit code 2).
class RuntimeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A fitness evaluation produced NaN or Inf.
class NonFiniteFitness : public RuntimeError {
public:
    using RuntimeError::RuntimeError;
};

/// Feasible domain: an axis-aligned box with finite bounds and lower < upper.
class BoxDomain {
public:
    BoxDomain(std::vector<double> lower, std::vector<double> upper);

    /// Same bounds in every dimension.
    static BoxDomain cube(std::size_t dim, double lower, double upper);

    /// Test double that also admits lower == upper (a single point).
    static BoxDomain degenerate(std::vector<double> lower, std::vector<double> upper);

    [[nodiscard]] std::size_t dim() const { return lower_.size(); }
    [[nodiscard]] std::span<const double> lower() const { return lower_; }
    [[nodiscard]] std::span<const double> upper() const { return upper_; }
    [[nodiscard]] double lower(std::size_t d) const { return lower_[d]; }
    [[nodiscard]] double upper(std::size_t d) const { return upper_[d]; }
    [[nodiscard]] double width(std::size_t d) const { return upper_[d] - lower_[d]; }

    /// log v(S) = sum of log widths; avoids overflow at high dimension.
    [[nodiscard]] double log_measure() const;
    [[nodiscard]] bool contains(std::span<const double> x) const;

    bool operator==(const BoxDomain&) const = default;

private:
    struct Unchecked {};
    BoxDomain(std::vector<double> lower, std::vector<double> upper, Unchecked);

    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// Dense row-major matrix; rows are individuals, columns are dimensions.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool empty() const { return data_.empty(); }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    double& operator()(std::size_t i, std::size_t d) { return data_[i * cols_ + d]; }
    double operator()(std::size_t i, std::size_t d) const { return data_[i * cols_ + d]; }

    [[nodiscard]] const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Per-run operator counters used by tests and diagnostics.
struct StepCounters {
    std::uint64_t mutations = 0;
    /// DE draws where r1, r2 and i were not pairwise distinct; stays 0.
    std::uint64_t index_collisions = 0;
    std::uint64_t resamples = 0;
    std::uint64_t gt_applications = 0;
    std::uint64_t gt_trials = 0;
    std::uint64_t gt_accepts = 0;
    /// Evaluations refused because the budget was spent.
    std::uint64_t refused_evaluations = 0;
};

struct BestSoFar {
    std::vector<double> position;
    double fitness = 0.0;
    bool valid = false;
};

/// Full state of one population-based run at generation `generation`.
/// velocities and the personal-best fields are empty for algorithms that do
/// not use them.
struct PopulationState {
    Matrix positions;
    Matrix velocities;
    Matrix pbest_positions;
    std::vector<double> fitness;
    std::vector<double> pbest_fitness;
    BestSoFar best;
    std::uint64_t generation = 0;
    std::uint64_t eval_count = 0;
    /// Gaussian draws that fell outside the scope oracle's truncation interval.
    std::uint64_t tail_events = 0;
    StepCounters counters;

    [[nodiscard]] std::size_t size() const { return positions.rows(); }
    [[nodiscard]] std::size_t dim() const { return positions.cols(); }
    [[nodiscard]] bool has_velocity() const { return !velocities.empty(); }
    [[nodiscard]] bool has_pbest() const { return !pbest_positions.empty(); }
};

enum class RepairPolicy { resample_uniform, clamp_position, clamp_velocity };

RepairPolicy parse_repair_policy(std::string_view name);

std::vector<double> uniform_sample(const BoxDomain& domain, RngStream& rng);
void uniform_sample_into(const BoxDomain& domain, RngStream& rng, std::span<double> out);

/// Brings a position (and optionally a velocity) back inside its limits.
///
/// resample_uniform replaces the whole position with a uniform draw when any
/// coordinate is outside the domain; clamp_position projects onto the box;
/// clamp_velocity saturates each |v_d| at v_max[d] and leaves the position
/// untouched.
void repair(std::span<double> position, std::span<double> velocity, const BoxDomain& domain,
            RepairPolicy policy, RngStream& rng, std::span<const double> v_max = {});

/// Default velocity limit: 0.2 of the domain width per dimension.
std::vector<double> default_v_max(const BoxDomain& domain, double fraction = 0.2);

/// Elitist best-so-far update (strict improvement only; ties keep the
/// incumbent). Throws NonFiniteFitness on NaN/Inf fitness.
void update_best_so_far(PopulationState& state);

/// Throws NonFiniteFitness unless `value` is finite.
void require_finite(double value, std::string_view context);

}  // namespace sdmc
