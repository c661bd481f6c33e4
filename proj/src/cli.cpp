#include "sdmc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sdmc/coverage_kernel.hpp"
#include "sdmc/experiment.hpp"
#include "sdmc/format.hpp"
#include "sdmc/report.hpp"
#include "sdmc/scope.hpp"
#include "sdmc/stability.hpp"
#include "sdmc/stats.hpp"

namespace sdmc {

namespace {

struct RunArgs {
    std::string config;
    std::string output;
};

struct CheckArgs {
    std::string algo = "partition-sampler";
    std::string func = "sphere";
    std::size_t dim = 2;
    std::uint64_t budget = 0;
    std::size_t window_max = 50;
    std::uint64_t samples = 100000;
    double tol = 1e-3;
    std::uint64_t seed = 1;
    std::uint64_t start = 1;
    std::size_t stride = 0;
    std::size_t pop = 0;
    std::string trace_in;
    std::string trace_out;
};

struct StabilityArgs {
    double omega = 0.9;
    double c1 = 2.0;
    double c2 = 2.0;
    std::string mode = "plug-in";
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    std::string dist;
    double a = 1.0;
    double b = 2.0;
    std::size_t points = 101;
};

struct CompareArgs {
    std::string baseline;
    std::string candidate;
    double alpha = 0.05;
    std::string label;
    std::string output;
};

struct PlotArgs {
    std::vector<std::string> inputs;
    std::string output;
    std::string title;
    bool linear = false;
};

int cmd_run(const RunArgs& a, std::ostream& out) {
    ExperimentConfig cfg = load_experiment_config(a.config);
    if (!a.output.empty()) cfg.output = a.output;
    const auto records = run_trials(cfg);
    std::vector<double> finals;
    for (const auto& r : records) {
        out << "run " << r.run_index << " final_best " << format_double(r.final_best) << " evals "
            << r.curve.back().eval_count << (r.budget_cut ? " (cut)" : "") << '\n';
        finals.push_back(r.final_best);
    }
    const Summary s = summarize(finals);
    out << function_name(cfg.function) << ' ' << algorithm_name(cfg.algorithm.id) << ' ' << format_sci(s.mean)
        << "±" << format_sci(s.stddev) << '\n';
    if (!cfg.output.empty()) out << "records written to " << cfg.output << '\n';
    return kExitOk;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
    ScopeTrace trace{BoxDomain::cube(1, 0.0, 1.0), 0, {}};
    if (!a.trace_in.empty()) {
        std::ifstream in(a.trace_in);
        if (!in) throw ConfigError("cannot read trace file: " + a.trace_in);
        trace = read_scope_trace(in);
    } else {
        ExperimentConfig cfg;
        cfg.algorithm = default_config(parse_algorithm_id(a.algo));
        cfg.algorithm.population = a.pop;
        cfg.function = parse_function_id(a.func);
        cfg.dim = a.dim;
        cfg.budget = a.budget;
        cfg.runs = 1;
        cfg.seed = a.seed;
        cfg.instrument.scope_trace = true;
        cfg.instrument.scope_from_generation = a.start;
        const RunRecord rec = run_single(cfg, 0);
        if (!rec.scope || rec.scope->size() == 0) {
            throw ConfigError("budget leaves no generation at or after --start " + std::to_string(a.start));
        }
        trace = *rec.scope;
    }
    if (!a.trace_out.empty()) {
        std::ostringstream buf;
        write_scope_trace(buf, trace);
        write_text_file(a.trace_out, buf.str());
    }

    SdmcOptions opt;
    opt.n_max = a.window_max;
    opt.stride = a.stride;
    opt.samples = a.samples;
    opt.tolerance = a.tol;
    opt.threads = threads_from_env();
    const auto rng = RngStream::for_run(a.seed, 0, StreamPurpose::scope_monte_carlo);
    const SdmcVerdict v = sdmc_check(trace, opt, rng);
    if (v.covers()) {
        out << "COVERS N=" << v.covering_window << '\n';
    } else {
        out << "FAILS t=" << v.witness_generation << '\n';
        out << "witness";
        for (double x : v.witness_point) out << ' ' << format_double(x);
        out << '\n';
    }
    out << "generations " << trace.first_generation << ".." << trace.first_generation + trace.size() - 1
        << " starts_tested " << v.windows.size() << " n_max " << v.n_max_used << (v.restricted ? " (restricted)" : "")
        << '\n';
    return v.covers() ? kExitOk : kExitFails;
}

void print_complex(std::ostream& out, const std::complex<double>& z) {
    out << format_double(z.real());
    if (z.imag() != 0.0) out << (z.imag() < 0 ? " - " : " + ") << format_double(std::abs(z.imag())) << "i";
}

int cmd_stability(const StabilityArgs& a, std::ostream& out) {
    if (!a.dist.empty()) {
        if (a.points < 2) throw ConfigError("--points must be at least 2");
        out << "z,pdf,cdf\n";
        if (a.dist == "ldiw-z") {
            const double hi = a.a + a.b;
            for (std::size_t k = 0; k < a.points; ++k) {
                const double z = hi * static_cast<double>(k) / static_cast<double>(a.points - 1);
                out << format_double(z) << ',' << format_double(z_pdf_ldiw(a.a, a.b, z)) << ','
                    << format_double(z_cdf_ldiw(a.a, a.b, z)) << '\n';
            }
        } else if (a.dist == "diff-uniform") {
            const DiffUniform d = diff_uniform_dist(a.a, a.b);
            for (std::size_t k = 0; k < a.points; ++k) {
                const double z = -d.width + 2.0 * d.width * static_cast<double>(k) / static_cast<double>(a.points - 1);
                out << format_double(z) << ',' << format_double(d.pdf(z)) << ',' << format_double(d.cdf(z)) << '\n';
            }
        } else {
            throw ConfigError("unknown distribution: " + a.dist + " (expected ldiw-z or diff-uniform)");
        }
        return kExitOk;
    }

    const ModulusMode mode = parse_modulus_mode(a.mode);
    const double phi = 0.5 * (a.c1 + a.c2);
    const EigenPair e = particle_eigenvalues({a.omega, phi});
    const ModulusEstimate est = expected_max_modulus(a.omega, a.c1, a.c2, mode, a.samples, a.seed);
    out << std::setprecision(6) << std::fixed;
    out << "omega " << a.omega << " phi " << phi << '\n';
    out << "lambda1 ";
    print_complex(out, e.first);
    out << "\nlambda2 ";
    print_complex(out, e.second);
    out << "\n|lambda1| " << std::abs(e.first) << " |lambda2| " << std::abs(e.second) << '\n';
    out << "max_modulus " << est.value;
    if (mode == ModulusMode::monte_carlo) out << " std_error " << est.std_error << " samples " << est.samples;
    out << '\n';
    return kExitOk;
}

int cmd_compare(const CompareArgs& a, std::ostream& out) {
    const auto base = read_records(a.baseline);
    const auto cand = read_records(a.candidate);
    std::string label = a.label;
    if (label.empty()) label = std::filesystem::path(a.baseline).lexically_normal().filename().string();
    if (label.empty()) label = "F1";
    const ComparisonRow row = compare(base, cand, a.alpha, label);
    std::ostringstream csv;
    write_comparison_csv(csv, {row});
    out << csv.str();
    out << "baseline  " << format_sci(row.baseline.mean) << "±" << format_sci(row.baseline.stddev) << '\n';
    out << "candidate " << table_cell(row.candidate, row.verdict) << '\n';
    if (!a.output.empty()) write_text_file(a.output, csv.str());
    return kExitOk;
}

int cmd_plot(const PlotArgs& a, std::ostream& out) {
    std::vector<PlotSeries> series;
    bool scatter = false;
    PlotOptions opt;
    opt.title = a.title;
    for (const auto& path : a.inputs) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot read " + path);
        std::string header;
        std::getline(in, header);
        in.seekg(0);
        const std::string stem = std::filesystem::path(path).stem().string();
        if (header.starts_with("eval_count,generation,std_dim")) {
            PlotSeries s{stem, {}, {}};
            for (const auto& p : read_std_csv(in)) {
                s.x.push_back(static_cast<double>(p.eval_count));
                s.y.push_back(p.stddev);
            }
            series.push_back(std::move(s));
            opt.x_label = "evaluations";
            opt.y_label = "population std (" + header.substr(header.rfind(',') + 1) + ")";
        } else if (header.starts_with("eval_count,best_fitness")) {
            PlotSeries s{stem, {}, {}};
            for (const auto& p : read_curve_csv(in)) {
                s.x.push_back(static_cast<double>(p.eval_count));
                s.y.push_back(p.best_fitness);
            }
            series.push_back(std::move(s));
            opt.x_label = "evaluations";
            opt.y_label = "best fitness";
        } else if (header.starts_with("generation,individual")) {
            for (auto& s : snapshot_series(read_snapshot_csv(in))) {
                if (a.inputs.size() > 1) s.label = stem + " " + s.label;
                series.push_back(std::move(s));
            }
            scatter = true;
            opt.x_label = "x0";
            opt.y_label = "x1";
        } else {
            throw ConfigError("unrecognized CSV header in " + path + ": " + header);
        }
    }
    opt.log_y = !scatter && !a.linear;
    const std::string svg = scatter ? svg_scatter_plot(series, opt) : svg_line_plot(series, opt);
    write_text_file(a.output, svg);
    out << "wrote " << a.output << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Search-scope instrumentation and global convergence checks for evolutionary algorithms", "sdmc"};
    app.require_subcommand(1);

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Execute an experiment config file");
    run_cmd->add_option("config", run.config, "JSON experiment config")->required();
    run_cmd->add_option("-o,--output", run.output, "Record directory (overrides the config)");

    CheckArgs chk;
    auto* chk_cmd = app.add_subcommand("sdmc-check", "Run one trial with scope tracing and test the covering condition");
    chk_cmd->add_option("--algo", chk.algo, "Algorithm id")->capture_default_str();
    chk_cmd->add_option("--func", chk.func, "Function id")->capture_default_str();
    chk_cmd->add_option("--dim", chk.dim, "Dimension")->capture_default_str();
    chk_cmd->add_option("--budget", chk.budget, "Evaluation budget (0: 5000*dim)")->capture_default_str();
    chk_cmd->add_option("--window-max", chk.window_max, "Largest window length N")->capture_default_str();
    chk_cmd->add_option("--samples", chk.samples, "Monte-Carlo coverage samples")->capture_default_str();
    chk_cmd->add_option("--tol", chk.tol, "Uncovered-fraction tolerance")->capture_default_str();
    chk_cmd->add_option("--seed", chk.seed, "Master seed")->capture_default_str();
    chk_cmd->add_option("--start", chk.start, "First generation whose scope is recorded")->capture_default_str();
    chk_cmd->add_option("--stride", chk.stride, "Distance between tested window starts (0: auto)");
    chk_cmd->add_option("--pop", chk.pop, "Population size (0: algorithm default)");
    chk_cmd->add_option("--trace", chk.trace_in, "Check this scope trace file instead of running");
    chk_cmd->add_option("--save-trace", chk.trace_out, "Write the scope trace here");

    StabilityArgs st;
    auto* st_cmd = app.add_subcommand("stability", "Eigenvalues of the second-order particle model");
    st_cmd->add_option("--omega", st.omega, "Inertia weight")->capture_default_str();
    st_cmd->add_option("--c1", st.c1, "Cognitive coefficient")->capture_default_str();
    st_cmd->add_option("--c2", st.c2, "Social coefficient")->capture_default_str();
    st_cmd->add_option("--mode", st.mode, "plug-in or monte-carlo")->capture_default_str();
    st_cmd->add_option("--samples", st.samples, "Monte-Carlo samples")->capture_default_str();
    st_cmd->add_option("--seed", st.seed, "Monte-Carlo seed")->capture_default_str();
    st_cmd->add_option("--dist", st.dist, "Emit z,pdf,cdf CSV for ldiw-z (deltas a, b) or diff-uniform (interval a, b)");
    st_cmd->add_option("--a", st.a, "First distribution parameter")->capture_default_str();
    st_cmd->add_option("--b", st.b, "Second distribution parameter")->capture_default_str();
    st_cmd->add_option("--points", st.points, "Grid points for --dist")->capture_default_str();

    CompareArgs cmp;
    auto* cmp_cmd = app.add_subcommand("compare", "Rank-sum comparison of two record directories");
    cmp_cmd->add_option("baseline", cmp.baseline, "Baseline record directory")->required();
    cmp_cmd->add_option("candidate", cmp.candidate, "Candidate record directory")->required();
    cmp_cmd->add_option("--alpha", cmp.alpha, "Significance level")->capture_default_str();
    cmp_cmd->add_option("--label", cmp.label, "Function label for the row");
    cmp_cmd->add_option("-o,--output", cmp.output, "Also write the comparison CSV here");

    PlotArgs plt;
    auto* plt_cmd = app.add_subcommand("plot", "Render run, std or snapshot CSVs as SVG");
    plt_cmd->add_option("inputs", plt.inputs, "CSV files")->required();
    plt_cmd->add_option("-o,--output", plt.output, "SVG path")->required();
    plt_cmd->add_option("--title", plt.title, "Chart title");
    plt_cmd->add_flag("--linear", plt.linear, "Linear vertical axis");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(run, out);
        if (chk_cmd->parsed()) return cmd_check(chk, out);
        if (st_cmd->parsed()) return cmd_stability(st, out);
        if (cmp_cmd->parsed()) return cmd_compare(cmp, out);
        if (plt_cmd->parsed()) return cmd_plot(plt, out);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    }
    err << app.help();
    return kExitConfig;
}

}  // namespace sdmc
