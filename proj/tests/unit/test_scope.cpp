#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "sdmc/scope.hpp"

using namespace sdmc;

namespace {

BoxSet one_box(std::vector<double> lo, std::vector<double> hi) {
    BoxSet s(lo.size());
    s.add(lo, hi);
    return s;
}

ScopeTrace record(const AlgoConfig& cfg, const ObjectiveSpec& f, std::uint64_t seed, int gens) {
    auto rng = RngSet::for_run(seed, 0);
    const Problem p{&f};
    auto st = initialize(cfg, p, rng);
    ScopeTrace trace{f.domain, 1, {}};
    for (int g = 0; g < gens; ++g) {
        trace.push(reachable_scope(cfg, st, f.domain));
        st = step(std::move(st), cfg, p, rng);
    }
    return trace;
}

}  // namespace

TEST_CASE("box set containment and domain cover") {
    const auto dom = BoxDomain::cube(2, 0.0, 1.0);
    auto s = one_box({0.0, 0.0}, {0.5, 0.5});
    const std::vector<double> in{0.25, 0.5}, out{0.75, 0.25};
    CHECK(s.contains(in));
    CHECK_FALSE(s.contains(out));
    CHECK_FALSE(s.covers_domain(dom));
    s.add(std::vector<double>{-1.0, -1.0}, std::vector<double>{2.0, 2.0});
    CHECK(s.covers_domain(dom));
    CHECK_THROWS_AS(s.add(std::vector<double>{0.0}, std::vector<double>{1.0}), ConfigError);
}

TEST_CASE("de scope matches brute force over admissible index pairs") {
    // 1-D: x_i = 0, best at 2, others {1, 2}, F = 0.5
    auto cfg = default_config(AlgorithmId::de);
    cfg.f = 0.5;
    const auto dom = BoxDomain::cube(1, -10.0, 10.0);
    PopulationState st;
    st.positions = Matrix(3, 1);
    st.positions(0, 0) = 0.0;
    st.positions(1, 0) = 1.0;
    st.positions(2, 0) = 2.0;
    st.fitness = {3.0, 2.0, 1.0};

    for (std::size_t i = 0; i < 3; ++i) {
        const double xi = st.positions(i, 0);
        double lo = xi, hi = xi;  // selection may keep the parent
        for (std::size_t a = 0; a < 3; ++a) {
            for (std::size_t b = 0; b < 3; ++b) {
                if (a == i || b == i || a == b) continue;
                const double m = de_mutant(xi, 2.0, st.positions(a, 0), st.positions(b, 0), 0.5);
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
        }
        const auto scope = reachable_scope(cfg, st, dom);
        REQUIRE(scope.size() == 3);
        CHECK(scope.lower(i)[0] == doctest::Approx(lo));
        CHECK(scope.upper(i)[0] == doctest::Approx(hi));
    }
    const auto s0 = reachable_scope(cfg, st, dom);
    CHECK(s0.lower(0)[0] == 0.0);
    CHECK(s0.upper(0)[0] == 1.5);
}

TEST_CASE("de scope becomes the whole domain when the mutant may leave it") {
    auto cfg = default_config(AlgorithmId::de);
    cfg.f = 0.9;
    const auto dom = BoxDomain::cube(1, 0.0, 2.0);
    PopulationState st;
    st.positions = Matrix(4, 1);
    for (std::size_t i = 0; i < 4; ++i) st.positions(i, 0) = 0.5 * static_cast<double>(i);
    st.fitness = {0.0, 1.0, 2.0, 3.0};
    const auto scope = reachable_scope(cfg, st, dom);
    // individual 3 at 1.5: 1.5 + 0.9 * ((0 - 1.5) - 1.0) < 0
    CHECK(scope.lower(3)[0] == 0.0);
    CHECK(scope.upper(3)[0] == 2.0);
}

TEST_CASE("partition sampler scope alternates between B and C") {
    const auto f = make_objective("sphere", 2);
    auto cfg = default_config(AlgorithmId::partition_sampler);
    cfg.population = 5;
    auto rng = RngSet::for_run(1, 0);
    auto st = initialize(cfg, Problem{&f}, rng);
    auto s = reachable_scope(cfg, st, f.domain);  // next generation is odd: C
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.lower(i)[0] == 0.0);
        CHECK(s.upper(i)[0] == 100.0);
    }
    st.generation = 1;
    s = reachable_scope(cfg, st, f.domain);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.lower(i)[0] == -100.0);
        CHECK(s.upper(i)[0] == 0.0);
        CHECK(s.lower(i)[1] == -100.0);
        CHECK(s.upper(i)[1] == 100.0);
    }
}

TEST_CASE("stagnant swarm has zero-width scope") {
    const auto dom = BoxDomain::cube(3, -5.0, 5.0);
    for (auto id : {AlgorithmId::ldiw_pso, AlgorithmId::slpso}) {
        auto cfg = default_config(id);
        PopulationState st;
        st.positions = Matrix(4, 3, 1.25);
        st.velocities = Matrix(4, 3, 0.0);
        st.pbest_positions = st.positions;
        st.fitness.assign(4, 2.0);
        st.pbest_fitness = st.fitness;
        update_best_so_far(st);
        const auto s = reachable_scope(cfg, st, dom);
        REQUIRE(s.size() == 4);
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t d = 0; d < 3; ++d) CHECK(s.upper(i)[d] - s.lower(i)[d] == 0.0);
        }
        CHECK(coverage_fraction(s, dom, 10000, RngStream(1, 0)) == 0.0);
        CHECK(projected_union_length(s, 0) == 0.0);
    }
}

TEST_CASE("scope oracle rejects inconsistent state") {
    const auto dom = BoxDomain::cube(2, 0.0, 1.0);
    PopulationState st;
    st.positions = Matrix(3, 2, 0.5);
    st.fitness.assign(3, 0.0);
    CHECK_THROWS_AS(reachable_scope(default_config(AlgorithmId::ldiw_pso), st, dom), ConfigError);
    CHECK_THROWS_AS(reachable_scope(default_config(AlgorithmId::de), st, BoxDomain::cube(3, 0.0, 1.0)),
                    ConfigError);
}

TEST_CASE("soundness: realized positions lie inside their reachable boxes") {
    const auto f = make_objective("rastrigin", 4);
    const Problem p{&f};
    for (auto id : studied_algorithms()) {
        CAPTURE(algorithm_name(id));
        auto cfg = default_config(id);
        if (id == AlgorithmId::slpso || id == AlgorithmId::gtpso || id == AlgorithmId::gtpso_sigma) {
            cfg.population = 10;
        } else {
            cfg.population = 8;
        }
        std::uint64_t draws = 0, tails = 0, checked = 0;
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            auto rng = RngSet::for_run(seed, 0);
            auto st = initialize(cfg, p, rng);
            for (int g = 0; g < 60; ++g) {
                const auto scope = reachable_scope(cfg, st, f.domain);
                REQUIRE(scope.size() == st.size());
                const auto tails_before = st.tail_events;
                st = step(std::move(st), cfg, p, rng);
                ++draws;
                if (st.tail_events != tails_before) {
                    ++tails;
                    continue;
                }
                for (std::size_t i = 0; i < st.size(); ++i) {
                    const auto x = st.positions.row(i);
                    const auto box = scope.box(i);
                    double slack = 0.0;
                    for (double v : x) slack = std::max(slack, 1e-9 * (1.0 + std::abs(v)));
                    REQUIRE(box.contains(x, slack));
                    ++checked;
                }
            }
        }
        CHECK(checked > 0);
        CHECK(tails <= draws / 2);
    }
}

TEST_CASE("window union") {
    const auto dom = BoxDomain::cube(1, 0.0, 3.0);
    ScopeTrace trace{dom, 0, {}};
    trace.push(one_box({0.0}, {1.0}));
    trace.push(one_box({2.0}, {3.0}));
    CHECK(window_union(trace, 0, 1) == trace.generations[0]);
    const auto u = window_union(trace, 0, 2);
    CHECK(u.size() == 2);
    CHECK(coverage_fraction(u, dom, 200000, RngStream(3, 0)) == doctest::Approx(2.0 / 3.0).epsilon(0.01));
    CHECK_THROWS_AS(window_union(trace, 1, 2), std::out_of_range);
    CHECK_THROWS_AS(window_union(trace, 0, 0), std::out_of_range);
}

TEST_CASE("coverage fraction") {
    const auto dom = BoxDomain::cube(2, 0.0, 1.0);
    const RngStream rng(5, 0);
    CHECK(coverage_fraction(BoxSet(2), dom, 100, rng) == 0.0);
    CHECK(coverage_fraction(one_box({0.0, 0.0}, {1.0, 1.0}), dom, 100, rng) == 1.0);
    const double c = coverage_fraction(one_box({0.0, 0.0}, {0.5, 0.5}), dom, 1000000, rng);
    CHECK(std::abs(c - 0.25) <= 0.0015);
    CHECK_THROWS_AS(coverage_fraction(BoxSet(2), dom, 0, rng), ConfigError);
}

TEST_CASE("sdmc check on the partition sampler covers with N = 2") {
    const auto f = make_objective("sphere", 2);
    auto cfg = default_config(AlgorithmId::partition_sampler);
    const auto trace = record(cfg, f, 7, 20);
    SdmcOptions opt;
    opt.n_max = 5;
    opt.samples = 20000;
    const auto v = sdmc_check(trace, opt, RngStream(7, 2));
    CHECK(v.covers());
    CHECK(v.covering_window == 2);
    for (const auto& w : v.windows) {
        CHECK(w.covering_n == 2);
        CHECK(w.coverage[1] == 1.0);
        CHECK(std::abs(w.coverage[0] - 0.5) < 0.02);
    }
    CHECK(v.windows.back().start_generation == trace.first_generation + trace.size() - opt.n_max);
}

TEST_CASE("sdmc check on the uniform sampler covers with N = 1") {
    const auto f = make_objective("sphere", 3);
    const auto trace = record(default_config(AlgorithmId::uniform_sampler), f, 1, 1);
    SdmcOptions opt;
    opt.samples = 1000;
    const auto v = sdmc_check(trace, opt, RngStream(1, 2));
    CHECK(v.covers());
    CHECK(v.covering_window == 1);
    CHECK(v.restricted);
}

TEST_CASE("sdmc check fails for converged de with a witness outside the window") {
    const auto f = make_objective("sphere", 10);
    auto cfg = default_config(AlgorithmId::de);
    auto rng = RngSet::for_run(11, 0);
    const Problem p{&f};
    auto st = initialize(cfg, p, rng);
    for (int g = 0; g < 200; ++g) st = step(std::move(st), cfg, p, rng);
    ScopeTrace trace{f.domain, st.generation + 1, {}};
    for (int g = 0; g < 60; ++g) {
        trace.push(reachable_scope(cfg, st, f.domain));
        st = step(std::move(st), cfg, p, rng);
    }
    SdmcOptions opt;
    opt.n_max = 50;
    opt.samples = 20000;
    const auto v = sdmc_check(trace, opt, RngStream(11, 2));
    REQUIRE_FALSE(v.covers());
    REQUIRE(v.witness_point.size() == 10);
    CHECK(f.domain.contains(v.witness_point));
    const auto t = static_cast<std::size_t>(v.witness_generation - trace.first_generation);
    CHECK_FALSE(window_union(trace, t, opt.n_max).contains(v.witness_point));
}

TEST_CASE("sdmc coverage is monotone in N") {
    const auto f = make_objective("rastrigin", 2);
    auto cfg = default_config(AlgorithmId::de);
    cfg.population = 10;
    const auto trace = record(cfg, f, 3, 30);
    SdmcOptions opt;
    opt.n_max = 10;
    opt.samples = 5000;
    opt.stride = 3;
    const auto v = sdmc_check(trace, opt, RngStream(3, 2));
    for (const auto& w : v.windows) {
        for (std::size_t k = 1; k < w.coverage.size(); ++k) CHECK(w.coverage[k] >= w.coverage[k - 1]);
    }
}

TEST_CASE("sdmc check validates its options") {
    const auto dom = BoxDomain::cube(1, 0.0, 1.0);
    ScopeTrace empty{dom, 0, {}};
    const RngStream rng(1, 0);
    CHECK_THROWS_AS(sdmc_check(empty, {}, rng), ConfigError);
    ScopeTrace trace{dom, 0, {}};
    trace.push(one_box({0.0}, {1.0}));
    SdmcOptions opt;
    opt.tolerance = 0.5;
    CHECK_THROWS_AS(sdmc_check(trace, opt, rng), ConfigError);
    opt.tolerance = 1e-3;
    opt.n_max = 0;
    CHECK_THROWS_AS(sdmc_check(trace, opt, rng), ConfigError);
}

TEST_CASE("projected union length") {
    BoxSet s(1);
    CHECK(projected_union_length(s, 0) == 0.0);
    s.add(std::vector<double>{0.0}, std::vector<double>{1.0});
    s.add(std::vector<double>{0.5}, std::vector<double>{2.0});
    CHECK(projected_union_length(s, 0) == 2.0);
    BoxSet t(1);
    t.add(std::vector<double>{2.0}, std::vector<double>{3.0});
    t.add(std::vector<double>{0.0}, std::vector<double>{1.0});
    CHECK(projected_union_length(t, 0) == 2.0);
}

TEST_CASE("population std") {
    CHECK(population_std(Matrix(4, 2, 3.0), 1) == 0.0);
    Matrix m(2, 1);
    m(1, 0) = 2.0;
    CHECK(population_std(m, 0) == 1.0);
}

TEST_CASE("scope trace text round trip") {
    const auto f = make_objective("ackley", 3);
    auto cfg = default_config(AlgorithmId::gtde);
    cfg.population = 6;
    const auto trace = record(cfg, f, 8, 5);
    std::stringstream ss;
    write_scope_trace(ss, trace);
    const auto back = read_scope_trace(ss);
    CHECK(back.domain == trace.domain);
    CHECK(back.first_generation == trace.first_generation);
    REQUIRE(back.size() == trace.size());
    for (std::size_t g = 0; g < trace.size(); ++g) CHECK(back.generations[g] == trace.generations[g]);

    std::istringstream bad("dim 1\ndomain 0 1\ngenerations 0 1\n0 0 0.5 0.2\n");
    CHECK_THROWS_AS(read_scope_trace(bad), ConfigError);
    std::istringstream out_of_range("dim 1\ndomain 0 1\ngenerations 0 1\n3 0 0.1 0.2\n");
    CHECK_THROWS_AS(read_scope_trace(out_of_range), ConfigError);
}
