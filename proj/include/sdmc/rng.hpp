#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace sdmc {

/// Purpose tags for per-run streams. Each purpose owns an independent stream
/// so that instrumentation draws never shift the optimizer's sequence.
enum class StreamPurpose : std::uint64_t {
    population = 0,
    gene_targeting = 1,
    scope_monte_carlo = 2,
    analysis = 3,
};

/// Seeded random stream identified by (seed, stream_id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
/// are fully specified by the standard. All conversions to real numbers are
/// done here rather than through <random> distributions, whose output is
/// implementation-defined, so a given (seed, stream_id) replays identically
/// across standard libraries.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    /// Stream for run `run` and purpose `purpose` under a master seed.
    static RngStream for_run(std::uint64_t master_seed, std::uint64_t run, StreamPurpose purpose);

    /// Child stream; children with distinct ids are independent of each other
    /// and of the parent.
    [[nodiscard]] RngStream substream(std::uint64_t child_id) const;

    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n). n must be positive.
    std::size_t index(std::size_t n);
    /// Standard normal draw (Box-Muller, one value per call).
    double gaussian();
    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    std::uint64_t next_u64() { return engine_(); }

    [[nodiscard]] std::uint64_t seed() const { return seed_; }
    [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive stream ids.
std::uint64_t mix64(std::uint64_t x);

}  // namespace sdmc
