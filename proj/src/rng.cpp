#include "sdmc/rng.hpp"

#include <cmath>
#include <numbers>

namespace sdmc {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

RngStream RngStream::for_run(std::uint64_t master_seed, std::uint64_t run, StreamPurpose purpose) {
    const auto id = mix64(mix64(run) ^ (static_cast<std::uint64_t>(purpose) + 1) * 0x632be59bd9b4e019ULL);
    return {master_seed, id};
}

RngStream RngStream::substream(std::uint64_t child_id) const {
    return {seed_, mix64(stream_id_ ^ mix64(child_id + 0x5851f42d4c957f2dULL))};
}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

__extension__ using uint128 = unsigned __int128;

std::size_t RngStream::index(std::size_t n) {
    // Lemire-style rejection keeps the result unbiased for every n.
    const std::uint64_t bound = n;
    const std::uint64_t threshold = (0 - bound) % bound;
    while (true) {
        const std::uint64_t r = engine_();
        const auto product = static_cast<uint128>(r) * bound;
        if (static_cast<std::uint64_t>(product) >= threshold) {
            return static_cast<std::size_t>(product >> 64);
        }
    }
}

double RngStream::gaussian() {
    // 1 - u keeps the log argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace sdmc
