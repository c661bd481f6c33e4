#include "sdmc/coverage_kernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>

#include <omp.h>

#include "sdmc/scope.hpp"

namespace sdmc {

namespace {

bool box_contains(const BoxSet& set, std::size_t i, std::span<const double> x) {
    const auto lo = set.lower(i);
    const auto hi = set.upper(i);
    for (std::size_t d = 0; d < x.size(); ++d) {
        if (x[d] < lo[d] || x[d] > hi[d]) return false;
    }
    return true;
}

std::size_t first_layer_serial(std::span<const BoxSet* const> layers, std::span<const double> x) {
    for (std::size_t k = 0; k < layers.size(); ++k) {
        for (std::size_t i = 0; i < layers[k]->size(); ++i) {
            if (box_contains(*layers[k], i, x)) return k;
        }
    }
    return layers.size();
}

}  // namespace

int threads_from_env() {
    const char* raw = std::getenv("SDMC_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    try {
        const int n = std::stoi(raw);
        if (n < 1) throw ConfigError("SDMC_THREADS must be a positive integer");
        return n;
    } catch (const std::logic_error&) {
        throw ConfigError(std::string("SDMC_THREADS must be a positive integer, got ") + raw);
    }
}

FirstHitResult first_hit_serial(std::span<const BoxSet* const> layers, const BoxDomain& domain,
                                std::uint64_t samples, const RngStream& rng) {
    FirstHitResult result;
    result.histogram.assign(layers.size() + 1, 0);
    std::vector<double> x(domain.dim());
    RngStream block_rng = rng.substream(0);
    for (std::uint64_t s = 0; s < samples; ++s) {
        if (s % kCoverageBlock == 0) block_rng = rng.substream(s / kCoverageBlock);
        uniform_sample_into(domain, block_rng, x);
        const std::size_t k = first_layer_serial(layers, x);
        ++result.histogram[k];
        if (k == layers.size() && !result.has_miss) {
            result.has_miss = true;
            result.first_miss_index = s;
            result.first_miss_point = x;
        }
    }
    return result;
}

FirstHitResult first_hit_parallel(std::span<const BoxSet* const> layers, const BoxDomain& domain,
                                  std::uint64_t samples, const RngStream& rng, int threads) {
    const std::size_t n_layers = layers.size();
    const auto blocks = static_cast<std::int64_t>((samples + kCoverageBlock - 1) / kCoverageBlock);
    const int n_threads = threads > 0 ? threads : omp_get_max_threads();

    FirstHitResult result;
    result.histogram.assign(n_layers + 1, 0);
    std::uint64_t best_miss = std::numeric_limits<std::uint64_t>::max();

#pragma omp parallel num_threads(n_threads)
    {
        std::vector<std::uint64_t> local_hist(n_layers + 1, 0);
        std::uint64_t local_miss = std::numeric_limits<std::uint64_t>::max();
        std::vector<double> local_point;
        std::vector<double> x(domain.dim());

#pragma omp for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < blocks; ++b) {
            RngStream block_rng = rng.substream(static_cast<std::uint64_t>(b));
            const std::uint64_t begin = static_cast<std::uint64_t>(b) * kCoverageBlock;
            const std::uint64_t end = std::min(samples, begin + kCoverageBlock);
            for (std::uint64_t s = begin; s < end; ++s) {
                uniform_sample_into(domain, block_rng, x);
                std::size_t k = 0;
                while (k < n_layers && !layers[k]->contains(x)) ++k;
                ++local_hist[k];
                if (k == n_layers && s < local_miss) {
                    local_miss = s;
                    local_point = x;
                }
            }
        }

#pragma omp critical(sdmc_first_hit_merge)
        {
            for (std::size_t k = 0; k <= n_layers; ++k) result.histogram[k] += local_hist[k];
            if (local_miss < best_miss) {
                best_miss = local_miss;
                result.first_miss_point = std::move(local_point);
            }
        }
    }
    if (best_miss != std::numeric_limits<std::uint64_t>::max()) {
        result.has_miss = true;
        result.first_miss_index = best_miss;
    }
    return result;
}

}  // namespace sdmc
