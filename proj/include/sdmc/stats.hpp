#pragma once

#include <span>
#include <string>
#include <vector>

#include "sdmc/experiment.hpp"

namespace sdmc {

struct RankSumResult {
    /// Rank sum of the first sample (midranks for ties).
    double w = 0.0;
    double p_value = 1.0;
    /// Mean rank of each sample.
    double mean_rank_a = 0.0;
    double mean_rank_b = 0.0;
    bool exact = false;
};

/// Two-sided Wilcoxon rank-sum test. Exact when both samples have at most 20
/// values and there are no ties, otherwise the normal approximation with tie
/// and continuity correction.
RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b);

struct Summary {
    double mean = 0.0;
    /// Sample standard deviation (n - 1).
    double stddev = 0.0;
};

Summary summarize(std::span<const double> values);

double median(std::vector<double> values);

enum class Verdict { better, similar, worse };

/// "+", "~" and "-".
std::string verdict_symbol(Verdict v);
Verdict parse_verdict(std::string_view symbol);

struct ComparisonRow {
    std::string function;
    Summary baseline;
    Summary candidate;
    /// From the candidate's side; lower fitness is better.
    Verdict verdict = Verdict::similar;
    double p_value = 1.0;
};

/// Compares final best fitness values. Needs at least 5 values per side.
ComparisonRow compare(std::span<const double> baseline, std::span<const double> candidate, double alpha = 0.05,
                      std::string function = "");
ComparisonRow compare(const std::vector<RunRecord>& baseline, const std::vector<RunRecord>& candidate,
                      double alpha = 0.05, std::string function = "");

/// Table cell such as "4.08E-04±7.33E-05 (+)".
std::string table_cell(const Summary& s, Verdict v);

}  // namespace sdmc
