#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "sdmc/report.hpp"
#include "sdmc/stats.hpp"

using namespace sdmc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("sdmc_unit_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ExperimentConfig small_config(AlgorithmId id = AlgorithmId::de) {
    ExperimentConfig c;
    c.algorithm = default_config(id);
    c.algorithm.population = 10;
    c.function = FunctionId::rastrigin;
    c.dim = 4;
    c.budget = 400;
    c.runs = 3;
    c.seed = 5;
    return c;
}

// Brute-force two-sided permutation p-value for the rank-sum statistic.
double permutation_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> all(a);
    all.insert(all.end(), b.begin(), b.end());
    const std::size_t n = all.size(), m = a.size();
    std::vector<double> rank(n);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return all[x] < all[y]; });
    for (std::size_t i = 0; i < n; ++i) rank[idx[i]] = static_cast<double>(i + 1);
    const double expect = m * (n + 1) / 2.0;
    double observed = 0.0;
    for (std::size_t i = 0; i < m; ++i) observed += rank[i];
    const double dev = std::abs(observed - expect);
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(m), true);
    std::uint64_t total = 0, extreme = 0;
    std::sort(pick.begin(), pick.end());
    do {
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pick[i]) w += rank[i];
        }
        ++total;
        if (std::abs(w - expect) >= dev - 1e-9) ++extreme;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

TEST_CASE("config parsing") {
    const auto c = parse_experiment_config(R"({
        "algorithm": {"id": "gtpso", "sigma_mode": "constant", "sigma": 0.2, "population": 12},
        "function": "ackley", "dim": 6, "budget": 1000, "runs": 4, "seed": 9,
        "instrument": {"std_trace": true, "std_dim": 2, "snapshots": true, "snapshot_generations": [1, 2]},
        "output": "out"})");
    CHECK(c.algorithm.id == AlgorithmId::gtpso);
    CHECK(c.algorithm.sigma_mode == SigmaMode::constant);
    CHECK(c.algorithm.sigma == 0.2);
    CHECK(c.algorithm.population == 12);
    CHECK(c.function == FunctionId::ackley);
    CHECK(c.dim == 6);
    CHECK(c.runs == 4);
    CHECK(c.instrument.std_dim == 2);
    CHECK(c.instrument.snapshot_generations == std::vector<std::uint64_t>{1, 2});
    CHECK(c.output == "out");
    CHECK(c.auto_t_max);

    const auto d = parse_experiment_config(R"({"algorithm": "de", "function": "sphere", "dim": 3})");
    CHECK(d.effective_budget() == 15000);
    CHECK(d.runs == 30);
    CHECK(parse_experiment_config(R"({"algorithm": {"id": "ldiw-pso", "t_max": 50}, "function": "sphere", "dim": 2})")
              .auto_t_max == false);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse_experiment_config(R"({"algorithm": "de", "function": "sphere", "dim": 3, "color": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"algorithm": {"id": "de", "q": 1}, "function": "sphere", "dim": 3})"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_experiment_config(R"({"algorithm": "de", "function": "sphere", "dim": 3, "instrument": {"x": 1}})"),
        ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"algorithm": "de", "function": "sphere", "dim": 3, "runs": 0})"),
                    ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"algorithm": "de", "function": "nope", "dim": 3})"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config("{not json"), ConfigError);
    CHECK_THROWS_AS(load_experiment_config("/nonexistent/config.json"), ConfigError);

    auto c = small_config();
    c.budget = 9;
    CHECK_THROWS_AS(validate(c), ConfigError);
    CHECK_THROWS_AS(run_trials(c), ConfigError);
    c = small_config();
    c.instrument.std_trace = true;
    c.instrument.std_dim = 4;
    CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("t_max follows the budget") {
    auto c = small_config(AlgorithmId::ldiw_pso);
    c.budget = 1000;
    CHECK(resolved_algorithm(c).t_max == 99);
    c.auto_t_max = false;
    c.algorithm.t_max = 7;
    CHECK(resolved_algorithm(c).t_max == 7);
}

// ---------------------------------------------------------------------------
// Trials

TEST_CASE("a budget of one population runs exactly one generation") {
    auto c = small_config();
    c.budget = 10;
    c.runs = 1;
    const auto r = run_single(c, 0);
    CHECK(r.eval_ledger == std::vector<std::uint64_t>{10});
    CHECK(r.generations == 1);
    CHECK(r.curve.size() == 1);
}

TEST_CASE("mid-generation budget cut is recorded") {
    auto c = small_config();
    c.budget = 35;
    const auto r = run_single(c, 0);
    CHECK(r.eval_ledger == std::vector<std::uint64_t>{10, 10, 10, 5});
    CHECK(r.budget_cut);
    CHECK(r.curve.back().eval_count == 35);
}

TEST_CASE("records respect their invariants") {
    for (auto id : studied_algorithms()) {
        auto c = small_config(id);
        c.algorithm.population = 12;
        c.budget = 600;
        const auto recs = run_trials(c);
        REQUIRE(recs.size() == 3);
        for (const auto& r : recs) {
            const auto total = std::accumulate(r.eval_ledger.begin(), r.eval_ledger.end(), std::uint64_t{0});
            CHECK(total <= 600);
            for (std::size_t k = 1; k < r.curve.size(); ++k) {
                CHECK(r.curve[k].best_fitness <= r.curve[k - 1].best_fitness);
                CHECK(r.curve[k].eval_count >= r.curve[k - 1].eval_count);
            }
            CHECK(std::isfinite(r.final_best));
            CHECK(r.final_best >= 0.0);
            CHECK(r.final_best == r.curve.back().best_fitness);
        }
    }
}

TEST_CASE("trials are deterministic and independent of thread count") {
    auto c = small_config(AlgorithmId::gtde);
    c.instrument.std_trace = true;
    c.instrument.snapshots = true;
    c.instrument.snapshot_generations = {2, 5};
    const auto a = run_trials(c);
    ::setenv("SDMC_THREADS", "1", 1);
    const auto b = run_trials(c);
    ::unsetenv("SDMC_THREADS");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].curve == b[i].curve);
        CHECK(a[i].std_trace == b[i].std_trace);
        CHECK(a[i].eval_ledger == b[i].eval_ledger);
        CHECK(a[i].snapshots.size() == 2);
    }
    CHECK(a[0].curve != a[1].curve);
}

TEST_CASE("std trace and eval-range mean") {
    auto c = small_config();
    c.instrument.std_trace = true;
    c.instrument.std_dim = 1;
    const auto r = run_single(c, 0);
    const auto& t = dim_std_trace(r);
    REQUIRE(t.size() == r.curve.size());
    CHECK(t.front().eval_count == 10);
    CHECK(r.std_dim == 1);
    const std::vector<StdPoint> pts{{10, 0, 1.0}, {20, 1, 3.0}, {30, 2, 5.0}};
    CHECK(mean_std_in_eval_range(pts, 15, 30) == 4.0);
}

TEST_CASE("scope trace is recorded from the requested generation") {
    auto c = small_config();
    c.instrument.scope_trace = true;
    c.instrument.scope_from_generation = 5;
    c.budget = 200;
    const auto r = run_single(c, 0);
    REQUIRE(r.scope.has_value());
    CHECK(r.scope->first_generation == 5);
    CHECK(r.scope->size() == 15);
}

// ---------------------------------------------------------------------------
// Statistics

TEST_CASE("rank-sum test against a permutation oracle") {
    RngStream rng(3, 0);
    for (int trial = 0; trial < 8; ++trial) {
        const std::size_t m = 4 + static_cast<std::size_t>(trial % 4), n = 5 + static_cast<std::size_t>(trial % 3);
        std::vector<double> a(m), b(n);
        for (double& v : a) v = rng.gaussian();
        for (double& v : b) v = rng.gaussian() + 0.3 * trial;
        const auto r = wilcoxon_rank_sum(a, b);
        CHECK(r.exact);
        CHECK(r.p_value == doctest::Approx(permutation_p(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("rank-sum normal approximation") {
    std::vector<double> a(30), b(30);
    for (int i = 0; i < 30; ++i) {
        a[i] = i;
        b[i] = i + 100;
    }
    const auto r = wilcoxon_rank_sum(a, b);
    CHECK_FALSE(r.exact);
    CHECK(r.w == 465.0);
    CHECK(r.p_value < 1e-9);
    // ties: all equal gives p = 1
    const std::vector<double> same(10, 2.0);
    CHECK(wilcoxon_rank_sum(same, same).p_value == 1.0);
}

TEST_CASE("summary and median") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    const auto s = summarize(v);
    CHECK(s.mean == 2.5);
    CHECK(s.stddev == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(median(v) == 2.5);
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
}

TEST_CASE("compare verdicts") {
    std::vector<double> base(30), cand(30);
    for (int i = 0; i < 30; ++i) {
        base[i] = 10.0 + i;
        cand[i] = 1.0 + 0.1 * i;
    }
    CHECK(compare(base, cand).verdict == Verdict::better);
    CHECK(compare(cand, base).verdict == Verdict::worse);
    const auto same = compare(base, base);
    CHECK(same.verdict == Verdict::similar);
    const std::vector<double> flat(6, 1.0);
    const auto f = compare(flat, flat);
    CHECK(f.verdict == Verdict::similar);
    CHECK(f.p_value == 1.0);
    CHECK_THROWS_AS(compare(std::vector<double>(4, 1.0), flat), ConfigError);
    CHECK(verdict_symbol(Verdict::better) == "+");
    CHECK(parse_verdict("~") == Verdict::similar);
    CHECK(table_cell({4.08e-4, 7.33e-5}, Verdict::better) == "4.08E-04±7.33E-05 (+)");
}

TEST_CASE("compare(A, A) is similar for recorded runs") {
    auto c = small_config();
    c.runs = 6;
    const auto recs = run_trials(c);
    CHECK(compare(recs, recs).verdict == Verdict::similar);
}

// ---------------------------------------------------------------------------
// Export

TEST_CASE("comparison csv") {
    const ComparisonRow row{"F3", {2.81e1, 1.83}, {2.92e1, 1.98}, Verdict::similar, 0.31};
    CHECK(comparison_csv_line(row) == "F3,2.81E+01,1.83E+00,2.92E+01,1.98E+00,~,0.31");
    std::ostringstream empty;
    write_comparison_csv(empty, {});
    CHECK(empty.str() == "function,baseline_mean,baseline_std,candidate_mean,candidate_std,verdict,p_value\n");
}

TEST_CASE("csv round trips") {
    const std::vector<CurvePoint> curve{{10, 1.0 / 3.0}, {20, 1e-300}, {30, 0.0}};
    std::stringstream s1;
    write_curve_csv(s1, curve);
    CHECK(s1.str().rfind("eval_count,best_fitness\n", 0) == 0);
    CHECK(read_curve_csv(s1) == curve);

    const std::vector<StdPoint> st{{10, 0, 0.1}, {25, 1, 2.0 / 7.0}};
    std::stringstream s2;
    write_std_csv(s2, st, 0);
    CHECK(s2.str().rfind("eval_count,generation,std_dim0\n", 0) == 0);
    CHECK(read_std_csv(s2) == st);

    const std::vector<std::uint64_t> ledger{10, 10, 3};
    std::stringstream s3;
    write_ledger_csv(s3, ledger);
    CHECK(read_ledger_csv(s3) == ledger);

    Snapshot snap{7, Matrix(2, 3, 0.125)};
    snap.positions(1, 2) = -1.0 / 9.0;
    std::stringstream s4;
    write_snapshot_csv(s4, {snap});
    const auto back = read_snapshot_csv(s4);
    REQUIRE(back.size() == 1);
    CHECK(back[0].generation == 7);
    CHECK(back[0].positions == snap.positions);
}

TEST_CASE("record directories round trip and repeat byte for byte") {
    auto c = small_config(AlgorithmId::slpso);
    c.algorithm.population = 8;
    c.instrument.std_trace = true;
    c.instrument.snapshots = true;
    c.instrument.scope_trace = true;
    const auto first = scratch_dir("rt1");
    c.output = first.string();
    const auto recs = run_trials(c);
    const auto back = read_records(c.output);
    REQUIRE(back.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(back[i].run_index == i);
        CHECK(back[i].curve == recs[i].curve);
        CHECK(back[i].std_trace == recs[i].std_trace);
        CHECK(back[i].eval_ledger == recs[i].eval_ledger);
        CHECK(back[i].final_best == recs[i].final_best);
        REQUIRE(back[i].scope.has_value());
        CHECK(back[i].scope->generations == recs[i].scope->generations);
    }

    const auto other = scratch_dir("rt2");
    c.output = other.string();
    run_trials(c);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(other)) {
        CHECK(slurp(e.path()) == slurp(first / e.path().filename()));
        ++files;
    }
    CHECK(files >= 3 * 5);
}

TEST_CASE("unwritable paths raise runtime errors naming the path") {
    try {
        write_text_file("/proc/definitely/not/here.csv", "x");
        FAIL("expected an exception");
    } catch (const RuntimeError& e) {
        CHECK(std::string(e.what()).find("/proc/definitely/not/here.csv") != std::string::npos);
    }
}

TEST_CASE("svg output") {
    const PlotSeries s{"de", {1, 2, 3}, {1.0, 0.1, 0.0}};
    PlotOptions opt;
    opt.title = "std <dim 0>";
    opt.log_y = true;
    const auto svg = svg_line_plot({s}, opt);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("std &lt;dim 0&gt;") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);

    Snapshot snap{9, Matrix(3, 2, 0.5)};
    const auto series = snapshot_series({snap});
    REQUIRE(series.size() == 1);
    CHECK(series[0].x.size() == 3);
    const auto sc = svg_scatter_plot(series, {});
    CHECK(sc.find("<circle") != std::string::npos);
}
