#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "sdmc/algorithms.hpp"
#include "sdmc/core.hpp"

namespace sdmc {

/// Closed axis-aligned box; zero-width dimensions are allowed.
struct AxisBox {
    std::vector<double> lower;
    std::vector<double> upper;

    [[nodiscard]] std::size_t dim() const { return lower.size(); }
    [[nodiscard]] bool contains(std::span<const double> x, double slack = 0.0) const;

    bool operator==(const AxisBox&) const = default;
};

/// Union of axis boxes, stored flat. Keeps the bounding hull of its boxes so
/// containment queries can reject whole sets early.
class BoxSet {
public:
    BoxSet() = default;
    explicit BoxSet(std::size_t dim) : dim_(dim) {}

    void add(std::span<const double> lower, std::span<const double> upper);
    void add(const AxisBox& box) { add(box.lower, box.upper); }
    /// Appends every box of `other`.
    void append(const BoxSet& other);

    [[nodiscard]] std::size_t size() const { return dim_ == 0 ? 0 : lower_.size() / dim_; }
    [[nodiscard]] bool empty() const { return lower_.empty(); }
    [[nodiscard]] std::size_t dim() const { return dim_; }

    [[nodiscard]] std::span<const double> lower(std::size_t i) const { return {lower_.data() + i * dim_, dim_}; }
    [[nodiscard]] std::span<const double> upper(std::size_t i) const { return {upper_.data() + i * dim_, dim_}; }
    [[nodiscard]] AxisBox box(std::size_t i) const;

    /// True when some box contains x.
    [[nodiscard]] bool contains(std::span<const double> x) const;
    /// True when some box contains the whole domain.
    [[nodiscard]] bool covers_domain(const BoxDomain& domain) const;

    bool operator==(const BoxSet&) const = default;

private:
    std::size_t dim_ = 0;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<double> hull_lower_;
    std::vector<double> hull_upper_;
};

/// Per-generation search scopes M(t) for contiguous generations starting at
/// `first_generation`.
struct ScopeTrace {
    BoxDomain domain;
    std::uint64_t first_generation = 0;
    std::vector<BoxSet> generations;

    [[nodiscard]] std::size_t size() const { return generations.size(); }
    void push(BoxSet scope) { generations.push_back(std::move(scope)); }
};

/// Box of positions each individual can reach in the generation produced by
/// step(state): one box per individual, intersected with the domain.
///
/// Uniform factors range over [0,1], random indices over all admissible
/// choices, and Gaussian factors over their central cfg.truncation_q interval.
/// Whenever a repair by uniform resampling is reachable the individual's box
/// is the whole domain.
BoxSet reachable_scope(const AlgoConfig& cfg, const PopulationState& state, const BoxDomain& domain);

/// U_{t,N}: the boxes of generations t .. t+N-1 (trace-relative indices).
BoxSet window_union(const ScopeTrace& trace, std::size_t t, std::size_t n);

/// Monte-Carlo estimate of v(boxset ∩ S) / v(S). Exactly 0 for an empty set
/// and exactly 1 when a box contains the domain.
double coverage_fraction(const BoxSet& boxset, const BoxDomain& domain, std::uint64_t samples, const RngStream& rng,
                         int threads = 0);

struct SdmcOptions {
    std::size_t n_max = 50;
    /// 0 selects max(1, trace length / 20).
    std::size_t stride = 0;
    std::uint64_t samples = 100000;
    double tolerance = 1e-3;
    /// 0 uses every available OpenMP thread.
    int threads = 0;
};

struct WindowCoverage {
    std::uint64_t start_generation = 0;
    /// Smallest covering N, 0 when none up to n_max works.
    std::size_t covering_n = 0;
    /// coverage[k] is the covered fraction of U_{t,k+1}.
    std::vector<double> coverage;
};

struct SdmcVerdict {
    enum class Outcome { covers, fails };

    Outcome outcome = Outcome::fails;
    /// Largest smallest-covering N over tested starts (covers only).
    std::size_t covering_window = 0;
    /// First tested start with no covering window (fails only).
    std::uint64_t witness_generation = 0;
    /// A sampled point of S outside U_{witness, n_max} (fails only).
    std::vector<double> witness_point;
    std::vector<WindowCoverage> windows;
    std::uint64_t samples = 0;
    double tolerance = 0.0;
    std::size_t n_max_requested = 0;
    std::size_t n_max_used = 0;
    /// The trace was shorter than n_max, so only one start was testable.
    bool restricted = false;

    [[nodiscard]] bool covers() const { return outcome == Outcome::covers; }
};

/// Finite-horizon test of the covering condition on a recorded trace.
///
/// For each tested start t finds the smallest N <= n_max whose window union
/// covers at least 1 - tolerance of S. The same sample set is reused for all
/// N at a given start, so coverage is monotone in N.
SdmcVerdict sdmc_check(const ScopeTrace& trace, const SdmcOptions& options, const RngStream& rng);

/// Length of the union of the per-box intervals in dimension d.
double projected_union_length(const BoxSet& boxset, std::size_t d);

/// Population standard deviation (divide by N) of column d.
double population_std(const Matrix& positions, std::size_t d);

/// Text format: a header with the domain and generation range, then one line
/// per box: generation individual lower... upper...
void write_scope_trace(std::ostream& out, const ScopeTrace& trace);
ScopeTrace read_scope_trace(std::istream& in);

}  // namespace sdmc
