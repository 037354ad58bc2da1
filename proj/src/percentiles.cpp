#include "citemet/percentiles.hpp"

#include <algorithm>

namespace citemet {

std::string_view to_string(percentile_scheme s) {
    return s == percentile_scheme::inclusive ? "inclusive" : "exclusive";
}

std::optional<percentile_scheme> parse_scheme(std::string_view token) {
    if (token == "inclusive") return percentile_scheme::inclusive;
    if (token == "exclusive") return percentile_scheme::exclusive;
    return std::nullopt;
}

rank_counts count_ranks(std::int64_t citations, std::span<const std::int64_t> reference) {
    rank_counts rc;
    rc.total = static_cast<std::int64_t>(reference.size());
    for (std::int64_t v : reference) {
        if (v < citations) ++rc.below;
        else if (v == citations) ++rc.equal;
    }
    return rc;
}

namespace {

double scheme_value(const rank_counts& rc, percentile_scheme scheme) {
    const double n = static_cast<double>(rc.total);
    if (scheme == percentile_scheme::inclusive) {
        return 100.0 * static_cast<double>(rc.below + rc.equal) / n;
    }
    return 100.0 * static_cast<double>(rc.below) / n;
}

} // namespace

double percentile_rank(std::int64_t citations, std::span<const std::int64_t> reference,
                       percentile_scheme scheme) {
    if (reference.empty()) throw data_error("empty reference set");
    rank_counts rc = count_ranks(citations, reference);
    if (rc.equal == 0) {
        throw data_error("citation count " + std::to_string(citations) +
                         " is not a member of the reference set");
    }
    return scheme_value(rc, scheme);
}

percentile_table assign_percentiles(const corpus& c, percentile_scheme scheme) {
    if (c.empty()) throw data_error("empty corpus");

    std::vector<std::int64_t> pooled;
    pooled.reserve(c.papers().size());
    for (const auto& p : c.papers()) pooled.push_back(p.citations);
    std::sort(pooled.begin(), pooled.end());

    percentile_table table;
    table.scheme = scheme;
    for (const auto& unit : c.units()) {
        auto& entries = table.by_unit[unit];
        for (std::size_t idx : c.unit_papers(unit)) {
            const auto& p = c.papers()[idx];
            auto lo = std::lower_bound(pooled.begin(), pooled.end(), p.citations);
            auto hi = std::upper_bound(pooled.begin(), pooled.end(), p.citations);
            rank_counts rc;
            rc.below = lo - pooled.begin();
            rc.equal = hi - lo;
            rc.total = static_cast<std::int64_t>(pooled.size());
            entries.push_back({p.paper_id, p.citations, scheme_value(rc, scheme)});
        }
    }
    return table;
}

std::string_view to_string(pr_class c) {
    switch (c) {
        case pr_class::top1: return "top1";
        case pr_class::top5: return "top5";
        case pr_class::top10: return "top10";
        case pr_class::top25: return "top25";
        case pr_class::top50: return "top50";
        case pr_class::bottom50: return "bottom50";
    }
    return "bottom50";
}

pr_class six_class(double pr) {
    if (pr < 0.0 || pr > 100.0) {
        throw data_error("percentile rank out of range [0,100]: " + std::to_string(pr));
    }
    if (pr >= 99.0) return pr_class::top1;
    if (pr >= 95.0) return pr_class::top5;
    if (pr >= 90.0) return pr_class::top10;
    if (pr >= 75.0) return pr_class::top25;
    if (pr >= 50.0) return pr_class::top50;
    return pr_class::bottom50;
}

std::map<std::string, i3_entry> i3_scores(const corpus& c, percentile_scheme scheme) {
    percentile_table table = assign_percentiles(c, scheme);
    std::map<std::string, i3_entry> out;
    double total = 0.0;
    for (const auto& [unit, entries] : table.by_unit) {
        double sum = 0.0;
        for (const auto& e : entries) sum += e.pr;
        out[unit].i3 = sum;
        total += sum;
    }
    if (total > 0.0) {
        for (auto& [unit, entry] : out) entry.share = 100.0 * entry.i3 / total;
    }
    return out;
}

} // namespace citemet
