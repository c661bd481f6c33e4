#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sdmc/core.hpp"

namespace sdmc {

class BoxSet;

/// Samples per RNG substream. Sample s is drawn from substream s / kCoverageBlock
/// of the caller's stream, so results do not depend on thread count.
inline constexpr std::uint64_t kCoverageBlock = 4096;

struct FirstHitResult {
    /// histogram[k] counts samples whose first containing layer is k;
    /// histogram[layers] counts samples contained in no layer.
    std::vector<std::uint64_t> histogram;
    /// Lowest-index sample that no layer contains, if any.
    bool has_miss = false;
    std::uint64_t first_miss_index = 0;
    std::vector<double> first_miss_point;
};

/// Draws `samples` uniform points of `domain` and records, for each, the
/// first layer containing it. Reference implementation, single-threaded.
FirstHitResult first_hit_serial(std::span<const BoxSet* const> layers, const BoxDomain& domain,
                                std::uint64_t samples, const RngStream& rng);

/// Same result as first_hit_serial, blocks distributed over OpenMP threads.
/// threads <= 0 uses the OpenMP default.
FirstHitResult first_hit_parallel(std::span<const BoxSet* const> layers, const BoxDomain& domain,
                                  std::uint64_t samples, const RngStream& rng, int threads = 0);

/// Thread cap from SDMC_THREADS, or 0 when unset.
int threads_from_env();

}  // namespace sdmc
