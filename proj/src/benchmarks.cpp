#include "sdmc/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

namespace sdmc {

namespace {

constexpr std::array<std::pair<FunctionId, std::string_view>, 12> kNames{{
    {FunctionId::sphere, "sphere"},
    {FunctionId::elliptic, "elliptic"},
    {FunctionId::schwefel_1_2, "schwefel-1.2"},
    {FunctionId::rosenbrock, "rosenbrock"},
    {FunctionId::rastrigin, "rastrigin"},
    {FunctionId::ackley, "ackley"},
    {FunctionId::griewank, "griewank"},
    {FunctionId::weierstrass_lite, "weierstrass-lite"},
    {FunctionId::schaffer_f7, "schaffer-f7"},
    {FunctionId::step, "step"},
    {FunctionId::sum_of_different_powers, "sum-of-different-powers"},
    {FunctionId::shifted_sphere, "shifted-sphere"},
}};

struct Bounds {
    double lower;
    double upper;
};

Bounds standard_bounds(FunctionId id) {
    switch (id) {
        case FunctionId::rosenbrock: return {-30.0, 30.0};
        case FunctionId::rastrigin: return {-5.12, 5.12};
        case FunctionId::ackley: return {-32.0, 32.0};
        case FunctionId::griewank: return {-600.0, 600.0};
        case FunctionId::weierstrass_lite: return {-0.5, 0.5};
        case FunctionId::sum_of_different_powers: return {-1.0, 1.0};
        default: return {-100.0, 100.0};
    }
}

// Weierstrass with a truncated series (k = 0..10) and a = 0.5, b = 3.
constexpr int kWeierstrassTerms = 11;
constexpr double kWeierstrassA = 0.5;
constexpr double kWeierstrassB = 3.0;

double weierstrass(std::span<const double> x) {
    double sum = 0.0;
    double offset = 0.0;
    for (int k = 0; k < kWeierstrassTerms; ++k) {
        const double ak = std::pow(kWeierstrassA, k);
        const double bk = std::pow(kWeierstrassB, k);
        offset += ak * std::cos(2.0 * std::numbers::pi * bk * 0.5);
    }
    for (double xi : x) {
        for (int k = 0; k < kWeierstrassTerms; ++k) {
            const double ak = std::pow(kWeierstrassA, k);
            const double bk = std::pow(kWeierstrassB, k);
            sum += ak * std::cos(2.0 * std::numbers::pi * bk * (xi + 0.5));
        }
    }
    return sum - static_cast<double>(x.size()) * offset;
}

double schaffer_f7(std::span<const double> x) {
    if (x.size() == 1) {
        const double s = std::abs(x[0]);
        const double t = std::sin(50.0 * std::pow(s, 0.2));
        const double term = std::sqrt(s) * (1.0 + t * t);
        return term * term;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double s = std::sqrt(x[i] * x[i] + x[i + 1] * x[i + 1]);
        const double t = std::sin(50.0 * std::pow(s, 0.2));
        sum += std::sqrt(s) * (1.0 + t * t);
    }
    const double mean = sum / static_cast<double>(x.size() - 1);
    return mean * mean;
}

}  // namespace

std::string_view function_name(FunctionId id) {
    for (const auto& [fid, name] : kNames) {
        if (fid == id) return name;
    }
    return "unknown";
}

FunctionId parse_function_id(std::string_view name) {
    for (const auto& [fid, fname] : kNames) {
        if (fname == name) return fid;
    }
    throw ConfigError("unknown function id: " + std::string(name));
}

bool is_unimodal(FunctionId id) {
    switch (id) {
        case FunctionId::sphere:
        case FunctionId::elliptic:
        case FunctionId::schwefel_1_2:
        case FunctionId::step:
        case FunctionId::sum_of_different_powers:
        case FunctionId::shifted_sphere:
            return true;
        default:
            return false;
    }
}

std::vector<FunctionId> suite_ids() {
    std::vector<FunctionId> ids;
    for (const auto& entry : kNames) ids.push_back(entry.first);
    return ids;
}

ObjectiveSpec make_objective(FunctionId id, std::size_t dim, std::vector<double> shift) {
    if (dim == 0) {
        throw ConfigError("objective dimension must be positive");
    }
    const auto bounds = standard_bounds(id);
    ObjectiveSpec spec{id, dim, BoxDomain::cube(dim, bounds.lower, bounds.upper),
                       std::vector<double>(dim, 0.0), 0.0, {}};
    if (id == FunctionId::rosenbrock) {
        spec.optimum_position.assign(dim, 1.0);
    }
    if (id == FunctionId::shifted_sphere) {
        if (shift.empty()) {
            shift.resize(dim);
            for (std::size_t d = 0; d < dim; ++d) {
                shift[d] = 0.5 * bounds.upper * std::sin(static_cast<double>(d) + 1.0);
            }
        }
        if (shift.size() != dim) {
            throw ConfigError("shift length does not match dimension");
        }
        if (!spec.domain.contains(shift)) {
            throw ConfigError("shift must lie inside the domain");
        }
        spec.optimum_position = shift;
        spec.shift = std::move(shift);
    }
    return spec;
}

ObjectiveSpec make_objective(std::string_view name, std::size_t dim) {
    return make_objective(parse_function_id(name), dim);
}

double evaluate(const ObjectiveSpec& spec, std::span<const double> x) {
    if (x.size() != spec.dim) {
        throw ConfigError("dimension mismatch: objective " + std::string(spec.name()) + " has dim " +
                          std::to_string(spec.dim) + ", got " + std::to_string(x.size()));
    }
    const auto n = static_cast<double>(x.size());
    switch (spec.id) {
        case FunctionId::sphere: {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s;
        }
        case FunctionId::elliptic: {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double e = x.size() > 1 ? 6.0 * static_cast<double>(i) / (n - 1.0) : 0.0;
                s += std::pow(10.0, e) * x[i] * x[i];
            }
            return s;
        }
        case FunctionId::schwefel_1_2: {
            double s = 0.0;
            double prefix = 0.0;
            for (double v : x) {
                prefix += v;
                s += prefix * prefix;
            }
            return s;
        }
        case FunctionId::rosenbrock: {
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const double a = x[i + 1] - x[i] * x[i];
                const double b = x[i] - 1.0;
                s += 100.0 * a * a + b * b;
            }
            if (x.size() == 1) {
                s = (x[0] - 1.0) * (x[0] - 1.0);
            }
            return s;
        }
        case FunctionId::rastrigin: {
            double s = 0.0;
            for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v) + 10.0;
            return s;
        }
        case FunctionId::ackley: {
            double sq = 0.0;
            double cs = 0.0;
            for (double v : x) {
                sq += v * v;
                cs += std::cos(2.0 * std::numbers::pi * v);
            }
            const double value = -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 +
                                 std::numbers::e;
            return std::max(value, 0.0);
        }
        case FunctionId::griewank: {
            double s = 0.0;
            double p = 1.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                s += x[i] * x[i] / 4000.0;
                p *= std::cos(x[i] / std::sqrt(static_cast<double>(i) + 1.0));
            }
            return s - p + 1.0;
        }
        case FunctionId::weierstrass_lite:
            return weierstrass(x);
        case FunctionId::schaffer_f7:
            return schaffer_f7(x);
        case FunctionId::step: {
            double s = 0.0;
            for (double v : x) {
                const double r = std::floor(v + 0.5);
                s += r * r;
            }
            return s;
        }
        case FunctionId::sum_of_different_powers: {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                s += std::pow(std::abs(x[i]), static_cast<double>(i) + 2.0);
            }
            return s;
        }
        case FunctionId::shifted_sphere: {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double z = x[i] - spec.shift[i];
                s += z * z;
            }
            return s;
        }
    }
    throw ConfigError("unknown objective");
}

std::vector<ObjectiveSpec> suite(std::size_t dim) {
    std::vector<ObjectiveSpec> out;
    for (auto id : suite_ids()) out.push_back(make_objective(id, dim));
    return out;
}

}  // namespace sdmc
