#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdmc/core.hpp"

namespace sdmc {

enum class FunctionId {
    sphere,
    elliptic,
    schwefel_1_2,
    rosenbrock,
    rastrigin,
    ackley,
    griewank,
    weierstrass_lite,
    schaffer_f7,
    step,
    sum_of_different_powers,
    shifted_sphere,
};

/// Stable string id ("sphere", "schwefel-1.2", ...) used in configs and flags.
std::string_view function_name(FunctionId id);
FunctionId parse_function_id(std::string_view name);
bool is_unimodal(FunctionId id);

/// A minimization objective with its standard domain and known optimum.
struct ObjectiveSpec {
    FunctionId id;
    std::size_t dim;
    BoxDomain domain;
    std::vector<double> optimum_position;
    double optimum_value = 0.0;
    /// Only used by shifted-sphere.
    std::vector<double> shift;

    [[nodiscard]] std::string_view name() const { return function_name(id); }
};

/// Builds the objective `id` in `dim` dimensions. shifted-sphere uses `shift`
/// when given, otherwise a fixed deterministic shift inside the domain.
ObjectiveSpec make_objective(FunctionId id, std::size_t dim, std::vector<double> shift = {});
ObjectiveSpec make_objective(std::string_view name, std::size_t dim);

/// f(x). Throws ConfigError on a dimension mismatch.
double evaluate(const ObjectiveSpec& spec, std::span<const double> x);

/// The twelve-function suite in a fixed order.
std::vector<ObjectiveSpec> suite(std::size_t dim);
std::vector<FunctionId> suite_ids();

}  // namespace sdmc
