#include "sdmc/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "sdmc/format.hpp"

namespace sdmc {

namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::uint64_t parse_u64(std::string_view text) {
    std::uint64_t v = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError("not an unsigned integer: '" + std::string(text) + "'");
    }
    return v;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// Reads the header and returns the remaining rows split into fields.
std::vector<std::vector<std::string>> read_rows(std::istream& in, std::string& header, std::size_t min_fields) {
    if (!std::getline(in, header)) throw ConfigError("CSV is empty");
    header = strip_cr(header);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() < min_fields) {
            throw ConfigError("CSV line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                              " fields");
        }
        rows.emplace_back(fields.begin(), fields.end());
    }
    return rows;
}

void expect_header(const std::string& got, std::string_view want) {
    if (got != want) throw ConfigError("unexpected CSV header '" + got + "', expected '" + std::string(want) + "'");
}

}  // namespace

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
    out << "eval_count,best_fitness\n";
    for (const auto& p : curve) out << p.eval_count << ',' << format_double(p.best_fitness) << '\n';
}

std::vector<CurvePoint> read_curve_csv(std::istream& in) {
    std::string header;
    const auto rows = read_rows(in, header, 2);
    expect_header(header, "eval_count,best_fitness");
    std::vector<CurvePoint> out;
    for (const auto& r : rows) out.push_back({parse_u64(r[0]), parse_double(r[1])});
    return out;
}

void write_std_csv(std::ostream& out, const std::vector<StdPoint>& trace, std::size_t dim_index) {
    out << "eval_count,generation,std_dim" << dim_index << '\n';
    for (const auto& p : trace) out << p.eval_count << ',' << p.generation << ',' << format_double(p.stddev) << '\n';
}

std::vector<StdPoint> read_std_csv(std::istream& in) {
    std::string header;
    const auto rows = read_rows(in, header, 3);
    if (!header.starts_with("eval_count,generation,std_dim")) expect_header(header, "eval_count,generation,std_dim0");
    std::vector<StdPoint> out;
    for (const auto& r : rows) out.push_back({parse_u64(r[0]), parse_u64(r[1]), parse_double(r[2])});
    return out;
}

void write_ledger_csv(std::ostream& out, const std::vector<std::uint64_t>& ledger) {
    out << "generation,evaluations\n";
    for (std::size_t g = 0; g < ledger.size(); ++g) out << g << ',' << ledger[g] << '\n';
}

std::vector<std::uint64_t> read_ledger_csv(std::istream& in) {
    std::string header;
    const auto rows = read_rows(in, header, 2);
    expect_header(header, "generation,evaluations");
    std::vector<std::uint64_t> out;
    for (const auto& r : rows) out.push_back(parse_u64(r[1]));
    return out;
}

void write_snapshot_csv(std::ostream& out, const std::vector<Snapshot>& snapshots) {
    const std::size_t dim = snapshots.empty() ? 0 : snapshots.front().positions.cols();
    out << "generation,individual";
    for (std::size_t d = 0; d < dim; ++d) out << ",x" << d;
    out << '\n';
    for (const auto& s : snapshots) {
        for (std::size_t i = 0; i < s.positions.rows(); ++i) {
            out << s.generation << ',' << i;
            for (double v : s.positions.row(i)) out << ',' << format_double(v);
            out << '\n';
        }
    }
}

std::vector<Snapshot> read_snapshot_csv(std::istream& in) {
    std::string header;
    const auto rows = read_rows(in, header, 2);
    if (!header.starts_with("generation,individual")) expect_header(header, "generation,individual,x0");
    const std::size_t dim = split(header).size() - 2;
    std::vector<Snapshot> out;
    std::vector<std::vector<double>> pending;
    auto flush = [&] {
        if (pending.empty()) return;
        Matrix m(pending.size(), dim);
        for (std::size_t i = 0; i < pending.size(); ++i) std::copy(pending[i].begin(), pending[i].end(), m.row(i).begin());
        out.back().positions = std::move(m);
        pending.clear();
    };
    for (const auto& r : rows) {
        if (r.size() != dim + 2) throw ConfigError("snapshot row width does not match header");
        const std::uint64_t g = parse_u64(r[0]);
        if (out.empty() || out.back().generation != g || parse_u64(r[1]) == 0) {
            flush();
            out.push_back({g, {}});
        }
        std::vector<double> x;
        for (std::size_t d = 0; d < dim; ++d) x.push_back(parse_double(r[d + 2]));
        pending.push_back(std::move(x));
    }
    flush();
    return out;
}

std::string comparison_csv_line(const ComparisonRow& row) {
    std::array<char, 32> p{};
    std::snprintf(p.data(), p.size(), "%.2g", row.p_value);
    return row.function + ',' + format_sci(row.baseline.mean) + ',' + format_sci(row.baseline.stddev) + ',' +
           format_sci(row.candidate.mean) + ',' + format_sci(row.candidate.stddev) + ',' +
           verdict_symbol(row.verdict) + ',' + p.data();
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << "function,baseline_mean,baseline_std,candidate_mean,candidate_std,verdict,p_value\n";
    for (const auto& r : rows) out << comparison_csv_line(r) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeError("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw RuntimeError("cannot write " + path.string());
}

namespace {

template <typename Fn>
void write_with(const std::filesystem::path& path, Fn&& fn) {
    std::ostringstream buf;
    fn(buf);
    write_text_file(path, buf.str());
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RuntimeError("cannot read " + path.string());
    return in;
}

}  // namespace

void write_records(const std::filesystem::path& dir, const std::vector<RunRecord>& records) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw RuntimeError("cannot create " + dir.string() + ": " + ec.message());
    for (const auto& r : records) {
        const std::string i = std::to_string(r.run_index);
        write_with(dir / ("run_" + i + ".csv"), [&](std::ostream& o) { write_curve_csv(o, r.curve); });
        write_with(dir / ("ledger_" + i + ".csv"), [&](std::ostream& o) { write_ledger_csv(o, r.eval_ledger); });
        if (!r.std_trace.empty()) {
            write_with(dir / ("std_" + i + ".csv"), [&](std::ostream& o) { write_std_csv(o, r.std_trace, r.std_dim); });
        }
        if (!r.snapshots.empty()) {
            write_with(dir / ("snap_" + i + ".csv"), [&](std::ostream& o) { write_snapshot_csv(o, r.snapshots); });
        }
        if (r.scope) {
            write_with(dir / ("scope_" + i + ".txt"), [&](std::ostream& o) { write_scope_trace(o, *r.scope); });
        }
    }
}

std::vector<RunRecord> read_records(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw ConfigError("not a record directory: " + dir.string());
    std::map<std::size_t, std::filesystem::path> runs;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (!name.starts_with("run_") || !name.ends_with(".csv")) continue;
        const std::string_view idx(name.data() + 4, name.size() - 8);
        std::size_t i = 0;
        const auto [end, err] = std::from_chars(idx.data(), idx.data() + idx.size(), i);
        if (err != std::errc{} || end != idx.data() + idx.size()) continue;
        runs.emplace(i, entry.path());
    }
    if (runs.empty()) throw ConfigError("no run_<i>.csv files in " + dir.string());

    std::vector<RunRecord> out;
    for (const auto& [i, path] : runs) {
        RunRecord r;
        r.run_index = i;
        auto in = open_in(path);
        r.curve = read_curve_csv(in);
        if (r.curve.empty()) throw ConfigError(path.string() + " has no rows");
        r.final_best = r.curve.back().best_fitness;
        const std::string s = std::to_string(i);
        if (const auto p = dir / ("ledger_" + s + ".csv"); std::filesystem::exists(p)) {
            auto f = open_in(p);
            r.eval_ledger = read_ledger_csv(f);
        }
        if (const auto p = dir / ("std_" + s + ".csv"); std::filesystem::exists(p)) {
            auto f = open_in(p);
            r.std_trace = read_std_csv(f);
        }
        if (const auto p = dir / ("snap_" + s + ".csv"); std::filesystem::exists(p)) {
            auto f = open_in(p);
            r.snapshots = read_snapshot_csv(f);
        }
        if (const auto p = dir / ("scope_" + s + ".txt"); std::filesystem::exists(p)) {
            auto f = open_in(p);
            r.scope = read_scope_trace(f);
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                              "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2f", v);
    return buf.data();
}

std::string tick_label(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.3g", v);
    return buf.data();
}

struct Frame {
    PlotOptions opt;
    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    static constexpr double left = 80, right = 150, top = 40, bottom = 60;

    [[nodiscard]] double ty(double y) const {
        const double v = opt.log_y ? std::log10(y) : y;
        return top + (y1 - v) / (y1 - y0) * (opt.height - top - bottom);
    }
    [[nodiscard]] double tx(double x) const { return left + (x - x0) / (x1 - x0) * (opt.width - left - right); }
};

bool usable(const Frame& f, double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!f.opt.log_y || y > 0.0);
}

Frame make_frame(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
    Frame f;
    f.opt = opt;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(f, s.x[i], s.y[i])) continue;
            const double y = opt.log_y ? std::log10(s.y[i]) : s.y[i];
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!std::isfinite(xmin)) {
        xmin = 0;
        xmax = 1;
        ymin = 0;
        ymax = 1;
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    if (opt.log_y) {
        ymin = std::floor(ymin);
        ymax = std::ceil(ymax);
    } else {
        const double pad = 0.05 * (ymax - ymin);
        ymin -= pad;
        ymax += pad;
    }
    f.x0 = xmin;
    f.x1 = xmax;
    f.y0 = ymin;
    f.y1 = ymax;
    return f;
}

void open_svg(std::ostringstream& o, const Frame& f) {
    const auto& opt = f.opt;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const double pw = opt.width - Frame::left - Frame::right;
    const double ph = opt.height - Frame::top - Frame::bottom;
    o << "<rect x=\"" << Frame::left << "\" y=\"" << Frame::top << "\" width=\"" << num(pw) << "\" height=\""
      << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    if (!opt.title.empty()) {
        o << "<text x=\"" << num(opt.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
          << escape(opt.title) << "</text>\n";
    }
    o << "<text x=\"" << num(Frame::left + pw / 2) << "\" y=\"" << opt.height - 15
      << "\" text-anchor=\"middle\">" << escape(opt.x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << num(Frame::top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(opt.y_label) << "</text>\n";

    for (int k = 0; k <= 5; ++k) {
        const double x = f.x0 + (f.x1 - f.x0) * k / 5.0;
        const double px = f.tx(x);
        o << "<line x1=\"" << num(px) << "\" y1=\"" << num(Frame::top + ph) << "\" x2=\"" << num(px) << "\" y2=\""
          << num(Frame::top + ph + 5) << "\" stroke=\"black\"/>\n";
        o << "<text x=\"" << num(px) << "\" y=\"" << num(Frame::top + ph + 18) << "\" text-anchor=\"middle\">"
          << tick_label(x) << "</text>\n";
    }
    std::vector<double> yticks;
    if (opt.log_y) {
        const int span = static_cast<int>(f.y1 - f.y0);
        const int step = std::max(1, span / 8);
        for (int e = static_cast<int>(f.y0); e <= static_cast<int>(f.y1); e += step) yticks.push_back(std::pow(10.0, e));
    } else {
        for (int k = 0; k <= 5; ++k) yticks.push_back(f.y0 + (f.y1 - f.y0) * k / 5.0);
    }
    for (double y : yticks) {
        const double py = f.ty(y);
        o << "<line x1=\"" << Frame::left - 5 << "\" y1=\"" << num(py) << "\" x2=\"" << num(Frame::left + pw)
          << "\" y2=\"" << num(py) << "\" stroke=\"#dddddd\"/>\n";
        std::string label = tick_label(y);
        if (opt.log_y) label = "1e" + std::to_string(static_cast<int>(std::lround(std::log10(y))));
        o << "<text x=\"" << Frame::left - 8 << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">" << label
          << "</text>\n";
    }
}

void legend(std::ostringstream& o, const Frame& f, const std::vector<PlotSeries>& series) {
    const double x = f.opt.width - Frame::right + 12;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = Frame::top + 10 + 18.0 * static_cast<double>(i);
        o << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 9) << "\" width=\"10\" height=\"10\" fill=\""
          << kPalette[i % kPalette.size()] << "\"/>\n";
        o << "<text x=\"" << num(x + 15) << "\" y=\"" << num(y) << "\">" << escape(series[i].label) << "</text>\n";
    }
}

}  // namespace

std::string svg_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options) {
    const Frame f = make_frame(series, options);
    std::ostringstream o;
    open_svg(o, f);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        o << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kPalette[i % kPalette.size()]
          << "\" points=\"";
        bool first = true;
        for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
            if (!usable(f, s.x[k], s.y[k])) continue;
            if (!first) o << ' ';
            o << num(f.tx(s.x[k])) << ',' << num(f.ty(s.y[k]));
            first = false;
        }
        o << "\"/>\n";
    }
    legend(o, f, series);
    o << "</svg>\n";
    return o.str();
}

std::string svg_scatter_plot(const std::vector<PlotSeries>& series, const PlotOptions& options) {
    const Frame f = make_frame(series, options);
    std::ostringstream o;
    open_svg(o, f);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* colour = kPalette[i % kPalette.size()];
        for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
            if (!usable(f, s.x[k], s.y[k])) continue;
            o << "<circle cx=\"" << num(f.tx(s.x[k])) << "\" cy=\"" << num(f.ty(s.y[k])) << "\" r=\"3\" fill=\""
              << colour << "\" fill-opacity=\"0.7\"/>\n";
        }
    }
    legend(o, f, series);
    o << "</svg>\n";
    return o.str();
}

std::vector<PlotSeries> snapshot_series(const std::vector<Snapshot>& snapshots, std::size_t dx, std::size_t dy) {
    std::vector<PlotSeries> out;
    for (const auto& s : snapshots) {
        if (dx >= s.positions.cols() || dy >= s.positions.cols()) throw ConfigError("snapshot dimension out of range");
        PlotSeries ps;
        ps.label = "gen " + std::to_string(s.generation);
        for (std::size_t i = 0; i < s.positions.rows(); ++i) {
            ps.x.push_back(s.positions(i, dx));
            ps.y.push_back(s.positions(i, dy));
        }
        out.push_back(std::move(ps));
    }
    return out;
}

}  // namespace sdmc
