#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citemet/corpus.hpp"

namespace citemet {

// inclusive: [(b+e)/n]*100   exclusive: [b/n]*100
// b = scores strictly below x, e = scores equal to x, n = reference size.
enum class percentile_scheme { inclusive, exclusive };

std::string_view to_string(percentile_scheme s);
std::optional<percentile_scheme> parse_scheme(std::string_view token);

// Integer counts behind a percentile rank; exposed so callers can reason
// about the exact rational value 100*(b[+e])/n.
struct rank_counts {
    std::int64_t below = 0;
    std::int64_t equal = 0;
    std::int64_t total = 0;
};

rank_counts count_ranks(std::int64_t citations, std::span<const std::int64_t> reference);

// Rank of one citation count within a reference multiset it belongs to.
// Throws on an empty reference or when citations is not a member.
double percentile_rank(std::int64_t citations, std::span<const std::int64_t> reference,
                       percentile_scheme scheme);

struct paper_percentile {
    std::string paper_id;
    std::int64_t citations = 0;
    double pr = 0.0;
};

struct percentile_table {
    percentile_scheme scheme = percentile_scheme::exclusive;
    // Unit id -> that unit's papers in ingestion order.
    std::map<std::string, std::vector<paper_percentile>> by_unit;
};

// Ranks every paper against the pooled corpus-wide citation multiset,
// all document types together.
percentile_table assign_percentiles(const corpus& c, percentile_scheme scheme);

enum class pr_class { top1, top5, top10, top25, top50, bottom50 };

std::string_view to_string(pr_class c);

// Closed lower bounds: pr >= 99 -> top1, 95 <= pr < 99 -> top5, and so on.
pr_class six_class(double pr);

struct i3_entry {
    double i3 = 0.0;
    std::optional<double> share; // percent of the corpus-wide i3 total; absent when that total is 0
};

// i3(unit) = sum of percentile ranks over the unit's papers.
std::map<std::string, i3_entry> i3_scores(const corpus& c, percentile_scheme scheme);

} // namespace citemet
