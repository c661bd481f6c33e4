#include "sdmc/scope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "sdmc/coverage_kernel.hpp"
#include "sdmc/format.hpp"

namespace sdmc {

// ---------------------------------------------------------------------------
// Boxes

bool AxisBox::contains(std::span<const double> x, double slack) const {
    for (std::size_t d = 0; d < x.size(); ++d) {
        if (x[d] < lower[d] - slack || x[d] > upper[d] + slack) return false;
    }
    return true;
}

void BoxSet::add(std::span<const double> lower, std::span<const double> upper) {
    if (dim_ == 0) dim_ = lower.size();
    if (lower.size() != dim_ || upper.size() != dim_) {
        throw ConfigError("box dimension does not match box set");
    }
    if (hull_lower_.empty()) {
        hull_lower_.assign(lower.begin(), lower.end());
        hull_upper_.assign(upper.begin(), upper.end());
    } else {
        for (std::size_t d = 0; d < dim_; ++d) {
            hull_lower_[d] = std::min(hull_lower_[d], lower[d]);
            hull_upper_[d] = std::max(hull_upper_[d], upper[d]);
        }
    }
    lower_.insert(lower_.end(), lower.begin(), lower.end());
    upper_.insert(upper_.end(), upper.begin(), upper.end());
}

void BoxSet::append(const BoxSet& other) {
    for (std::size_t i = 0; i < other.size(); ++i) add(other.lower(i), other.upper(i));
}

AxisBox BoxSet::box(std::size_t i) const {
    const auto lo = lower(i);
    const auto hi = upper(i);
    return {{lo.begin(), lo.end()}, {hi.begin(), hi.end()}};
}

bool BoxSet::contains(std::span<const double> x) const {
    if (lower_.empty()) return false;
    for (std::size_t d = 0; d < dim_; ++d) {
        if (x[d] < hull_lower_[d] || x[d] > hull_upper_[d]) return false;
    }
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        const double* lo = lower_.data() + i * dim_;
        const double* hi = upper_.data() + i * dim_;
        std::size_t d = 0;
        while (d < dim_ && x[d] >= lo[d] && x[d] <= hi[d]) ++d;
        if (d == dim_) return true;
    }
    return false;
}

bool BoxSet::covers_domain(const BoxDomain& domain) const {
    for (std::size_t i = 0; i < size(); ++i) {
        const auto lo = lower(i);
        const auto hi = upper(i);
        bool all = true;
        for (std::size_t d = 0; d < dim_ && all; ++d) {
            all = lo[d] <= domain.lower(d) && hi[d] >= domain.upper(d);
        }
        if (all) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Reachable-scope oracle

namespace {

struct Interval {
    double lo;
    double hi;

    static Interval point(double v) { return {v, v}; }
    /// Hull of {0, v}: the range of r * v for r in [0, 1].
    static Interval unit_scaled(double v) { return {std::min(0.0, v), std::max(0.0, v)}; }

    Interval operator+(Interval o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator+(double v) const { return {lo + v, hi + v}; }
    Interval operator*(double s) const { return s >= 0 ? Interval{lo * s, hi * s} : Interval{hi * s, lo * s}; }
    Interval operator*(Interval o) const {
        const std::array<double, 4> c{lo * o.lo, lo * o.hi, hi * o.lo, hi * o.hi};
        return {*std::min_element(c.begin(), c.end()), *std::max_element(c.begin(), c.end())};
    }
    [[nodiscard]] Interval hull(Interval o) const { return {std::min(lo, o.lo), std::max(hi, o.hi)}; }
    [[nodiscard]] Interval hull(double v) const { return {std::min(lo, v), std::max(hi, v)}; }
    [[nodiscard]] Interval clamp(double a, double b) const {
        return {std::clamp(lo, a, b), std::clamp(hi, a, b)};
    }
    [[nodiscard]] bool inside(double a, double b) const { return lo >= a && hi <= b; }
};

/// Per-dimension order statistics: the two smallest and two largest entries
/// of a column with their row indices.
struct ColumnExtremes {
    std::array<std::size_t, 2> min_idx{};
    std::array<std::size_t, 2> max_idx{};
    std::array<double, 2> min_val{};
    std::array<double, 2> max_val{};

    static ColumnExtremes of(const Matrix& m, std::size_t d) {
        ColumnExtremes e;
        e.min_val = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
        e.max_val = {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        for (std::size_t i = 0; i < m.rows(); ++i) {
            const double v = m(i, d);
            if (v < e.min_val[0]) {
                e.min_val[1] = e.min_val[0];
                e.min_idx[1] = e.min_idx[0];
                e.min_val[0] = v;
                e.min_idx[0] = i;
            } else if (v < e.min_val[1]) {
                e.min_val[1] = v;
                e.min_idx[1] = i;
            }
            if (v > e.max_val[0]) {
                e.max_val[1] = e.max_val[0];
                e.max_idx[1] = e.max_idx[0];
                e.max_val[0] = v;
                e.max_idx[0] = i;
            } else if (v > e.max_val[1]) {
                e.max_val[1] = v;
                e.max_idx[1] = i;
            }
        }
        return e;
    }

    [[nodiscard]] double min_excluding(std::size_t i) const { return min_idx[0] == i ? min_val[1] : min_val[0]; }
    [[nodiscard]] double max_excluding(std::size_t i) const { return max_idx[0] == i ? max_val[1] : max_val[0]; }
    [[nodiscard]] double range() const { return max_val[0] - min_val[0]; }
};

Interval truncated_gaussian(GaussianParam g, double z_q) {
    return {g.mean - z_q * g.stddev, g.mean + z_q * g.stddev};
}

bool bottleneck_possible(const AlgoConfig& cfg) {
    return cfg.bottleneck.mean > 0.0 || cfg.bottleneck.stddev > 0.0;
}

void add_full_domain(BoxSet& out, const BoxDomain& domain) { out.add(domain.lower(), domain.upper()); }

/// Per-individual box from per-dimension intervals, intersected with S.
void add_clamped(BoxSet& out, const BoxDomain& domain, std::span<const Interval> dims) {
    std::vector<double> lo(dims.size());
    std::vector<double> hi(dims.size());
    for (std::size_t d = 0; d < dims.size(); ++d) {
        const auto c = dims[d].clamp(domain.lower(d), domain.upper(d));
        lo[d] = c.lo;
        hi[d] = c.hi;
    }
    out.add(lo, hi);
}

bool all_inside(std::span<const Interval> dims, const BoxDomain& domain) {
    for (std::size_t d = 0; d < dims.size(); ++d) {
        if (!dims[d].inside(domain.lower(d), domain.upper(d))) return false;
    }
    return true;
}

BoxSet scope_de_family(const AlgoConfig& cfg, const PopulationState& state, const BoxDomain& domain) {
    const std::size_t n = state.size();
    const std::size_t dim = state.dim();
    const double z_q = central_normal_quantile(cfg.truncation_q);
    const bool gt = cfg.id == AlgorithmId::gtde;
    Interval f_range = Interval::point(cfg.f);
    if (gt) {
        f_range = truncated_gaussian(cfg.gt_f, z_q);
    } else if (cfg.f_distribution) {
        f_range = truncated_gaussian(*cfg.f_distribution, z_q);
    }
    const std::size_t best = rank_order(state.fitness).front();
    const auto& x = state.positions;

    std::vector<ColumnExtremes> extremes(dim);
    for (std::size_t d = 0; d < dim; ++d) extremes[d] = ColumnExtremes::of(x, d);

    BoxSet out(dim);
    std::vector<Interval> box(dim);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            // r1, r2 range over distinct indices other than i.
            const double spread = extremes[d].max_excluding(i) - extremes[d].min_excluding(i);
            const double pull = x(best, d) - x(i, d);
            const Interval inner{pull - spread, pull + spread};
            box[d] = ((f_range * inner) + x(i, d)).hull(x(i, d));
        }
        bool full = !all_inside(box, domain);

        if (!full && gt && i == best && bottleneck_possible(cfg)) {
            for (std::size_t d = 0; d < dim; ++d) {
                Interval gt_range = Interval::point(x(best, d));
                const Interval member{extremes[d].min_val[0], extremes[d].max_val[0]};
                if (cfg.p_m > 0.0) {
                    const Interval diff{member.lo - domain.upper(d), member.hi - domain.lower(d)};
                    gt_range = gt_range.hull((f_range * diff) + x(best, d));
                }
                if (cfg.p_m < 1.0) {
                    const double r = extremes[d].range();
                    gt_range = gt_range.hull((f_range * Interval{-r, r}) + x(best, d));
                }
                if (!gt_range.inside(domain.lower(d), domain.upper(d))) {
                    full = true;
                    break;
                }
                box[d] = box[d].hull(gt_range);
            }
        }
        if (full) {
            add_full_domain(out, domain);
        } else {
            add_clamped(out, domain, box);
        }
    }
    return out;
}

BoxSet scope_ldiw(const AlgoConfig& cfg, const PopulationState& state, const BoxDomain& domain) {
    const std::size_t dim = state.dim();
    const double omega = ldiw_inertia(state.generation, cfg);
    const auto v_max = default_v_max(domain, cfg.v_max_fraction);
    const auto& gbest = state.best.position;
    BoxSet out(dim);
    std::vector<Interval> box(dim);
    for (std::size_t i = 0; i < state.size(); ++i) {
        for (std::size_t d = 0; d < dim; ++d) {
            const double xi = state.positions(i, d);
            const Interval v = (Interval::unit_scaled(cfg.c1 * (state.pbest_positions(i, d) - xi)) +
                                Interval::unit_scaled(cfg.c2 * (gbest[d] - xi))) +
                               omega * state.velocities(i, d);
            box[d] = v.clamp(-v_max[d], v_max[d]) + xi;
        }
        add_clamped(out, domain, box);
    }
    return out;
}

BoxSet scope_slpso_family(const AlgoConfig& cfg, const PopulationState& state, const BoxDomain& domain) {
    const std::size_t n = state.size();
    const std::size_t dim = state.dim();
    const auto order = rank_order(state.fitness);
    const auto& x = state.positions;
    const auto& v = state.velocities;
    std::vector<double> mean(dim, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t d = 0; d < dim; ++d) mean[d] += x(i, d);
    }
    for (double& m : mean) m /= static_cast<double>(n);

    std::vector<AxisBox> boxes(n);
    std::vector<Interval> box(dim);
    // Running min/max of demonstrator coordinates over strictly better ranks.
    std::vector<double> demo_lo(dim, std::numeric_limits<double>::infinity());
    std::vector<double> demo_hi(dim, -std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = order[r];
        const double p_learn = r == 0 ? 0.0 : slpso_params(dim, r + 1, cfg, n).p_learn;
        const double epsilon = slpso_params(dim, 1, cfg, n).epsilon;
        for (std::size_t d = 0; d < dim; ++d) {
            const double xi = x(i, d);
            if (p_learn > 0.0) {
                const Interval social{std::min(0.0, demo_lo[d] - xi), std::max(0.0, demo_hi[d] - xi)};
                const Interval vel = Interval::unit_scaled(v(i, d)) + social +
                                     Interval::unit_scaled(epsilon * (mean[d] - xi));
                box[d] = (vel + xi).hull(xi);
            } else {
                box[d] = Interval::point(xi);
            }
        }
        BoxSet one(dim);
        add_clamped(one, domain, box);
        boxes[i] = one.box(0);
        for (std::size_t d = 0; d < dim; ++d) {
            demo_lo[d] = std::min(demo_lo[d], x(i, d));
            demo_hi[d] = std::max(demo_hi[d], x(i, d));
        }
    }

    const bool gt = cfg.id == AlgorithmId::gtpso || cfg.id == AlgorithmId::gtpso_sigma;
    if (gt && bottleneck_possible(cfg)) {
        const std::size_t b = order.front();
        const double z_q = central_normal_quantile(cfg.truncation_q);
        const bool constant = cfg.sigma_mode == SigmaMode::constant;
        for (std::size_t d = 0; d < dim; ++d) {
            const double xb = x(b, d);
            Interval velocity{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
            if (cfg.p_m > 0.0) {
                const double rp = ColumnExtremes::of(state.pbest_positions, d).range();
                const Interval eq38 = Interval{-cfg.gt_c1 * rp, cfg.gt_c1 * rp} +
                                      Interval::unit_scaled(cfg.gt_c2 * (mean[d] - xb)) + cfg.gt_omega * v(b, d);
                velocity = velocity.hull(eq38);
            }
            if (cfg.p_m < 1.0) {
                const auto e = ColumnExtremes::of(v, d);
                // Extremes of mean +/- z*std over distinct pairs are attained
                // among the two smallest and two largest velocities.
                const std::array<std::size_t, 4> cand{e.min_idx[0], e.min_idx[1], e.max_idx[0], e.max_idx[1]};
                for (std::size_t a = 0; a < cand.size(); ++a) {
                    for (std::size_t c = a + 1; c < cand.size(); ++c) {
                        if (cand[a] == cand[c]) continue;
                        const double va = v(cand[a], d);
                        const double vc = v(cand[c], d);
                        const double centre = 0.5 * (va + vc);
                        const double spread = constant ? cfg.sigma : 0.5 * std::abs(va - vc);
                        velocity = velocity.hull(Interval{centre - z_q * spread, centre + z_q * spread});
                    }
                }
            }
            const Interval reach = (velocity + xb).hull(xb).clamp(domain.lower(d), domain.upper(d));
            boxes[b].lower[d] = std::min(boxes[b].lower[d], reach.lo);
            boxes[b].upper[d] = std::max(boxes[b].upper[d], reach.hi);
        }
    }

    BoxSet out(dim);
    for (const auto& bx : boxes) out.add(bx);
    return out;
}

}  // namespace

BoxSet reachable_scope(const AlgoConfig& cfg, const PopulationState& state, const BoxDomain& domain) {
    if (state.dim() != domain.dim()) throw ConfigError("state and domain dimensions differ");
    switch (cfg.id) {
        case AlgorithmId::de:
        case AlgorithmId::gtde:
            return scope_de_family(cfg, state, domain);
        case AlgorithmId::ldiw_pso:
            if (!state.has_velocity() || !state.has_pbest()) {
                throw ConfigError("LDIW-PSO scope needs velocity and personal-best state");
            }
            return scope_ldiw(cfg, state, domain);
        case AlgorithmId::slpso:
        case AlgorithmId::gtpso:
        case AlgorithmId::gtpso_sigma:
            if (!state.has_velocity() || !state.has_pbest()) {
                throw ConfigError("SLPSO scope needs velocity and personal-best state");
            }
            return scope_slpso_family(cfg, state, domain);
        case AlgorithmId::partition_sampler: {
            const Region r = partition_region(domain, cfg, state.generation + 1);
            BoxSet out(domain.dim());
            for (std::size_t i = 0; i < state.size(); ++i) out.add(r.lower, r.upper);
            return out;
        }
        case AlgorithmId::uniform_sampler: {
            BoxSet out(domain.dim());
            for (std::size_t i = 0; i < state.size(); ++i) add_full_domain(out, domain);
            return out;
        }
    }
    throw ConfigError("unknown algorithm id");
}

// ---------------------------------------------------------------------------
// Windows, coverage, verdict

BoxSet window_union(const ScopeTrace& trace, std::size_t t, std::size_t n) {
    if (n == 0 || t + n > trace.size()) {
        throw std::out_of_range("window [" + std::to_string(t) + ", " + std::to_string(t + n) +
                                ") exceeds trace of length " + std::to_string(trace.size()));
    }
    BoxSet out(trace.domain.dim());
    for (std::size_t k = t; k < t + n; ++k) out.append(trace.generations[k]);
    return out;
}

double coverage_fraction(const BoxSet& boxset, const BoxDomain& domain, std::uint64_t samples, const RngStream& rng,
                         int threads) {
    if (samples == 0) throw ConfigError("coverage needs at least one sample");
    if (boxset.empty()) return 0.0;
    if (boxset.covers_domain(domain)) return 1.0;
    const std::array<const BoxSet*, 1> layers{&boxset};
    const auto hits = first_hit_parallel(layers, domain, samples, rng, threads);
    return static_cast<double>(hits.histogram[0]) / static_cast<double>(samples);
}

SdmcVerdict sdmc_check(const ScopeTrace& trace, const SdmcOptions& options, const RngStream& rng) {
    if (trace.size() == 0) throw ConfigError("sdmc_check needs a non-empty trace");
    if (options.n_max < 1) throw ConfigError("N_max must be at least 1");
    if (options.samples < 1) throw ConfigError("sdmc_check needs at least one sample");
    if (!(options.tolerance > 0.0 && options.tolerance <= 0.01)) {
        throw ConfigError("tolerance must lie in (0, 0.01]");
    }

    SdmcVerdict verdict;
    verdict.samples = options.samples;
    verdict.tolerance = options.tolerance;
    verdict.n_max_requested = options.n_max;
    verdict.restricted = trace.size() < options.n_max;
    verdict.n_max_used = std::min(options.n_max, trace.size());

    const std::size_t last_start = trace.size() - verdict.n_max_used;
    const std::size_t stride = options.stride > 0 ? options.stride : std::max<std::size_t>(1, trace.size() / 20);
    std::vector<std::size_t> starts;
    for (std::size_t t = 0; t <= last_start; t += stride) starts.push_back(t);
    if (starts.back() != last_start) starts.push_back(last_start);

    const int threads = options.threads > 0 ? options.threads : threads_from_env();
    const double needed = 1.0 - options.tolerance;
    std::size_t largest_n = 0;
    for (std::size_t t : starts) {
        std::vector<const BoxSet*> layers;
        for (std::size_t k = 0; k < verdict.n_max_used; ++k) layers.push_back(&trace.generations[t + k]);
        const auto hits = first_hit_parallel(layers, trace.domain, options.samples, rng.substream(t), threads);

        WindowCoverage window;
        window.start_generation = trace.first_generation + t;
        std::uint64_t covered = 0;
        for (std::size_t k = 0; k < layers.size(); ++k) {
            covered += hits.histogram[k];
            const double fraction = static_cast<double>(covered) / static_cast<double>(options.samples);
            window.coverage.push_back(fraction);
            if (window.covering_n == 0 && fraction >= needed) window.covering_n = k + 1;
        }
        verdict.windows.push_back(window);
        if (window.covering_n == 0) {
            verdict.outcome = SdmcVerdict::Outcome::fails;
            verdict.witness_generation = window.start_generation;
            verdict.witness_point = hits.first_miss_point;
            return verdict;
        }
        largest_n = std::max(largest_n, window.covering_n);
    }
    verdict.outcome = SdmcVerdict::Outcome::covers;
    verdict.covering_window = largest_n;
    return verdict;
}

double projected_union_length(const BoxSet& boxset, std::size_t d) {
    std::vector<std::pair<double, double>> intervals;
    intervals.reserve(boxset.size());
    for (std::size_t i = 0; i < boxset.size(); ++i) intervals.emplace_back(boxset.lower(i)[d], boxset.upper(i)[d]);
    std::sort(intervals.begin(), intervals.end());
    double total = 0.0;
    std::size_t i = 0;
    while (i < intervals.size()) {
        double lo = intervals[i].first;
        double hi = intervals[i].second;
        ++i;
        while (i < intervals.size() && intervals[i].first <= hi) {
            hi = std::max(hi, intervals[i].second);
            ++i;
        }
        total += hi - lo;
    }
    return total;
}

double population_std(const Matrix& positions, std::size_t d) {
    const std::size_t n = positions.rows();
    if (n == 0) return 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += positions(i, d);
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = positions(i, d) - mean;
        ss += e * e;
    }
    return std::sqrt(ss / static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Text format

void write_scope_trace(std::ostream& out, const ScopeTrace& trace) {
    const std::size_t dim = trace.domain.dim();
    out << "# scope-trace v1\n";
    out << "dim " << dim << '\n';
    out << "domain";
    for (double v : trace.domain.lower()) out << ' ' << format_double(v);
    for (double v : trace.domain.upper()) out << ' ' << format_double(v);
    out << '\n';
    out << "generations " << trace.first_generation << ' ' << trace.size() << '\n';
    for (std::size_t g = 0; g < trace.size(); ++g) {
        const auto& set = trace.generations[g];
        for (std::size_t i = 0; i < set.size(); ++i) {
            out << trace.first_generation + g << ' ' << i;
            for (double v : set.lower(i)) out << ' ' << format_double(v);
            for (double v : set.upper(i)) out << ' ' << format_double(v);
            out << '\n';
        }
    }
}

namespace {

[[noreturn]] void trace_error(std::size_t line, const std::string& what) {
    throw ConfigError("scope trace line " + std::to_string(line) + ": " + what);
}

std::string expect_keyword(std::istream& in, std::size_t& line_no, const std::string& key, std::istringstream& ls) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        ls = std::istringstream(line);
        std::string word;
        ls >> word;
        if (word != key) trace_error(line_no, "expected '" + key + "'");
        return line;
    }
    trace_error(line_no, "unexpected end of input, expected '" + key + "'");
}

}  // namespace

ScopeTrace read_scope_trace(std::istream& in) {
    std::size_t line_no = 0;
    std::istringstream ls;

    expect_keyword(in, line_no, "dim", ls);
    std::size_t dim = 0;
    if (!(ls >> dim) || dim == 0) trace_error(line_no, "bad dimension");

    expect_keyword(in, line_no, "domain", ls);
    std::vector<double> lo(dim);
    std::vector<double> hi(dim);
    for (auto& v : lo) {
        std::string tok;
        if (!(ls >> tok)) trace_error(line_no, "short domain line");
        v = parse_double(tok);
    }
    for (auto& v : hi) {
        std::string tok;
        if (!(ls >> tok)) trace_error(line_no, "short domain line");
        v = parse_double(tok);
    }

    expect_keyword(in, line_no, "generations", ls);
    std::uint64_t first = 0;
    std::size_t count = 0;
    if (!(ls >> first >> count)) trace_error(line_no, "bad generations line");

    ScopeTrace trace{BoxDomain(lo, hi), first, std::vector<BoxSet>(count, BoxSet(dim))};
    std::string line;
    std::vector<double> box_lo(dim);
    std::vector<double> box_hi(dim);
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        std::uint64_t gen = 0;
        std::size_t individual = 0;
        if (!(row >> gen >> individual)) trace_error(line_no, "bad box line");
        if (gen < first || gen >= first + count) trace_error(line_no, "generation out of range");
        std::string tok;
        for (auto& v : box_lo) {
            if (!(row >> tok)) trace_error(line_no, "short box line");
            v = parse_double(tok);
        }
        for (auto& v : box_hi) {
            if (!(row >> tok)) trace_error(line_no, "short box line");
            v = parse_double(tok);
        }
        if (row >> tok) trace_error(line_no, "trailing data");
        for (std::size_t d = 0; d < dim; ++d) {
            if (!(box_lo[d] <= box_hi[d])) trace_error(line_no, "box lower exceeds upper");
        }
        trace.generations[gen - first].add(box_lo, box_hi);
    }
    return trace;
}

}  // namespace sdmc
