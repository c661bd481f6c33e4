#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sdmc/experiment.hpp"
#include "sdmc/stats.hpp"

namespace sdmc {

// CSV schemas:
//   run_<i>.csv     eval_count,best_fitness
//   std_<i>.csv     eval_count,generation,std_dim<d>
//   ledger_<i>.csv  generation,evaluations
//   snap_<i>.csv    generation,individual,x0,x1,...
//   comparison      function,baseline_mean,baseline_std,candidate_mean,candidate_std,verdict,p_value
// Numbers are written in shortest round-trip form, so reading a file back
// reproduces the values exactly.

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);
std::vector<CurvePoint> read_curve_csv(std::istream& in);

void write_std_csv(std::ostream& out, const std::vector<StdPoint>& trace, std::size_t dim_index = 0);
std::vector<StdPoint> read_std_csv(std::istream& in);

void write_ledger_csv(std::ostream& out, const std::vector<std::uint64_t>& ledger);
std::vector<std::uint64_t> read_ledger_csv(std::istream& in);

void write_snapshot_csv(std::ostream& out, const std::vector<Snapshot>& snapshots);
std::vector<Snapshot> read_snapshot_csv(std::istream& in);

/// Comparison rows in Table I notation; an empty list gives the header only.
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);
std::string comparison_csv_line(const ComparisonRow& row);

/// Writes every per-run file of `records` into `dir` (created if missing).
/// Throws RuntimeError naming the path when a file cannot be written.
void write_records(const std::filesystem::path& dir, const std::vector<RunRecord>& records);

/// Reads run_<i>.csv (and std/ledger/snap/scope files when present) back,
/// ordered by run index. final_best is the last curve value.
std::vector<RunRecord> read_records(const std::filesystem::path& dir);

/// Writes `text` to `path`, throwing RuntimeError with the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    int width = 720;
    int height = 480;
};

/// Standalone SVG line chart. With log_y, non-positive values are skipped.
std::string svg_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

/// Standalone SVG scatter chart, one colour per series.
std::string svg_scatter_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

/// Scatter series of dimension dx vs dy, one per snapshot.
std::vector<PlotSeries> snapshot_series(const std::vector<Snapshot>& snapshots, std::size_t dx = 0,
                                        std::size_t dy = 1);

}  // namespace sdmc
