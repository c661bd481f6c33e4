#include "sdmc/core.hpp"

#include <algorithm>
#include <cmath>

namespace sdmc {

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper)
    : BoxDomain(std::move(lower), std::move(upper), Unchecked{}) {
    if (lower_.empty()) {
        throw ConfigError("domain must have at least one dimension");
    }
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        if (!std::isfinite(lower_[d]) || !std::isfinite(upper_[d]) || !(lower_[d] < upper_[d])) {
            throw ConfigError("domain bounds must be finite with lower < upper in dimension " +
                              std::to_string(d));
        }
    }
}

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper, Unchecked)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size()) {
        throw ConfigError("domain lower/upper dimension mismatch");
    }
}

BoxDomain BoxDomain::cube(std::size_t dim, double lower, double upper) {
    return {std::vector<double>(dim, lower), std::vector<double>(dim, upper)};
}

BoxDomain BoxDomain::degenerate(std::vector<double> lower, std::vector<double> upper) {
    BoxDomain out(std::move(lower), std::move(upper), Unchecked{});
    for (std::size_t d = 0; d < out.dim(); ++d) {
        if (!(out.lower_[d] <= out.upper_[d])) {
            throw ConfigError("degenerate domain requires lower <= upper");
        }
    }
    return out;
}

double BoxDomain::log_measure() const {
    double sum = 0.0;
    for (std::size_t d = 0; d < dim(); ++d) {
        sum += std::log(width(d));
    }
    return sum;
}

bool BoxDomain::contains(std::span<const double> x) const {
    if (x.size() != dim()) {
        return false;
    }
    for (std::size_t d = 0; d < dim(); ++d) {
        if (x[d] < lower_[d] || x[d] > upper_[d]) {
            return false;
        }
    }
    return true;
}

RepairPolicy parse_repair_policy(std::string_view name) {
    if (name == "resample_uniform") return RepairPolicy::resample_uniform;
    if (name == "clamp_position") return RepairPolicy::clamp_position;
    if (name == "clamp_velocity") return RepairPolicy::clamp_velocity;
    throw ConfigError("unknown repair policy: " + std::string(name));
}

void uniform_sample_into(const BoxDomain& domain, RngStream& rng, std::span<double> out) {
    for (std::size_t d = 0; d < domain.dim(); ++d) {
        out[d] = rng.uniform(domain.lower(d), domain.upper(d));
    }
}

std::vector<double> uniform_sample(const BoxDomain& domain, RngStream& rng) {
    std::vector<double> x(domain.dim());
    uniform_sample_into(domain, rng, x);
    return x;
}

void repair(std::span<double> position, std::span<double> velocity, const BoxDomain& domain,
            RepairPolicy policy, RngStream& rng, std::span<const double> v_max) {
    switch (policy) {
        case RepairPolicy::resample_uniform:
            if (!domain.contains(position)) {
                uniform_sample_into(domain, rng, position);
            }
            return;
        case RepairPolicy::clamp_position:
            for (std::size_t d = 0; d < position.size(); ++d) {
                position[d] = std::clamp(position[d], domain.lower(d), domain.upper(d));
            }
            return;
        case RepairPolicy::clamp_velocity:
            if (v_max.size() != velocity.size()) {
                throw ConfigError("clamp_velocity needs one v_max entry per dimension");
            }
            for (std::size_t d = 0; d < velocity.size(); ++d) {
                velocity[d] = std::clamp(velocity[d], -v_max[d], v_max[d]);
            }
            return;
    }
    throw ConfigError("unknown repair policy");
}

std::vector<double> default_v_max(const BoxDomain& domain, double fraction) {
    std::vector<double> v(domain.dim());
    for (std::size_t d = 0; d < domain.dim(); ++d) {
        v[d] = fraction * domain.width(d);
    }
    return v;
}

void require_finite(double value, std::string_view context) {
    if (!std::isfinite(value)) {
        throw NonFiniteFitness("non-finite fitness (" + std::to_string(value) + ") in " +
                               std::string(context));
    }
}

void update_best_so_far(PopulationState& state) {
    for (std::size_t i = 0; i < state.fitness.size(); ++i) {
        const double f = state.fitness[i];
        require_finite(f, "update_best_so_far");
        if (!state.best.valid || f < state.best.fitness) {
            const auto row = state.positions.row(i);
            state.best.position.assign(row.begin(), row.end());
            state.best.fitness = f;
            state.best.valid = true;
        }
    }
}

}  // namespace sdmc
