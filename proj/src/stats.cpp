#include "sdmc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdmc/core.hpp"
#include "sdmc/format.hpp"

namespace sdmc {

namespace {

// P(W <= w) and P(W >= w) for the rank sum of m values drawn from ranks 1..m+n.
std::pair<double, double> exact_tails(std::size_t m, std::size_t n, double w) {
    const std::size_t total = m + n;
    const std::size_t max_sum = m * (2 * total - m + 1) / 2;
    // ways[k][s]: subsets of size k of the ranks seen so far with sum s.
    std::vector<std::vector<double>> ways(m + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t r = 1; r <= total; ++r) {
        for (std::size_t k = std::min(r, m); k >= 1; --k) {
            for (std::size_t s = max_sum; s >= r; --s) ways[k][s] += ways[k - 1][s - r];
        }
    }
    double all = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    for (std::size_t s = 0; s <= max_sum; ++s) {
        const double c = ways[m][s];
        all += c;
        if (static_cast<double>(s) <= w + 1e-9) lower += c;
        if (static_cast<double>(s) >= w - 1e-9) upper += c;
    }
    return {lower / all, upper / all};
}

}  // namespace

RankSumResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ConfigError("rank-sum test needs two non-empty samples");
    const std::size_t m = a.size();
    const std::size_t n = b.size();
    const std::size_t total = m + n;

    struct Item {
        double value;
        bool first;
    };
    std::vector<Item> items;
    items.reserve(total);
    for (double v : a) items.push_back({v, true});
    for (double v : b) items.push_back({v, false});
    for (const auto& it : items) {
        if (std::isnan(it.value)) throw RuntimeError("rank-sum test on NaN values");
    }
    std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.value < y.value; });

    double w = 0.0;
    double tie_term = 0.0;
    bool ties = false;
    for (std::size_t i = 0; i < total;) {
        std::size_t j = i;
        while (j < total && items[j].value == items[i].value) ++j;
        const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);
        const auto t = static_cast<double>(j - i);
        if (j - i > 1) ties = true;
        tie_term += t * t * t - t;
        for (std::size_t k = i; k < j; ++k) {
            if (items[k].first) w += mid_rank;
        }
        i = j;
    }

    RankSumResult res;
    res.w = w;
    const double sum_all = 0.5 * static_cast<double>(total) * static_cast<double>(total + 1);
    res.mean_rank_a = w / static_cast<double>(m);
    res.mean_rank_b = (sum_all - w) / static_cast<double>(n);

    if (!ties && m <= 20 && n <= 20) {
        const auto [lower, upper] = exact_tails(m, n, w);
        res.exact = true;
        res.p_value = std::min(1.0, 2.0 * std::min(lower, upper));
        return res;
    }

    const auto md = static_cast<double>(m);
    const auto nd = static_cast<double>(n);
    const auto nt = static_cast<double>(total);
    const double mu = md * (nt + 1.0) / 2.0;
    const double var = md * nd / 12.0 * ((nt + 1.0) - tie_term / (nt * (nt - 1.0)));
    if (!(var > 0.0)) {
        res.p_value = 1.0;
        return res;
    }
    const double z = std::max(0.0, std::abs(w - mu) - 0.5) / std::sqrt(var);
    res.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return res;
}

Summary summarize(std::span<const double> values) {
    if (values.empty()) throw ConfigError("cannot summarize an empty sample");
    const auto n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

double median(std::vector<double> values) {
    if (values.empty()) throw ConfigError("median of an empty sample");
    std::sort(values.begin(), values.end());
    const std::size_t h = values.size() / 2;
    return values.size() % 2 == 1 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

std::string verdict_symbol(Verdict v) {
    switch (v) {
        case Verdict::better: return "+";
        case Verdict::similar: return "~";
        case Verdict::worse: return "-";
    }
    return "~";
}

Verdict parse_verdict(std::string_view symbol) {
    if (symbol == "+") return Verdict::better;
    if (symbol == "~") return Verdict::similar;
    if (symbol == "-") return Verdict::worse;
    throw ConfigError("unknown verdict symbol: " + std::string(symbol));
}

ComparisonRow compare(std::span<const double> baseline, std::span<const double> candidate, double alpha,
                      std::string function) {
    if (baseline.size() < 5 || candidate.size() < 5) throw ConfigError("compare needs at least 5 runs per side");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");

    ComparisonRow row;
    row.function = std::move(function);
    row.baseline = summarize(baseline);
    row.candidate = summarize(candidate);
    const auto test = wilcoxon_rank_sum(candidate, baseline);
    row.p_value = test.p_value;
    if (test.p_value < alpha) {
        const double mc = median({candidate.begin(), candidate.end()});
        const double mb = median({baseline.begin(), baseline.end()});
        bool candidate_better = mc < mb;
        if (mc == mb) candidate_better = test.mean_rank_a < test.mean_rank_b;
        row.verdict = candidate_better ? Verdict::better : Verdict::worse;
    }
    return row;
}

namespace {

std::vector<double> final_values(const std::vector<RunRecord>& records) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.final_best);
    return out;
}

}  // namespace

ComparisonRow compare(const std::vector<RunRecord>& baseline, const std::vector<RunRecord>& candidate, double alpha,
                      std::string function) {
    const auto b = final_values(baseline);
    const auto c = final_values(candidate);
    return compare(std::span<const double>(b), std::span<const double>(c), alpha, std::move(function));
}

std::string table_cell(const Summary& s, Verdict v) {
    return format_sci(s.mean) + "±" + format_sci(s.stddev) + " (" + verdict_symbol(v) + ")";
}

}  // namespace sdmc
