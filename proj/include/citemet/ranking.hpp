#pragma once

#include <optional>
#include <string>
#include <vector>

#include "citemet/indicators.hpp"

namespace citemet {

struct rank_row {
    std::string unit_id;
    double value = 0.0;
    int rank = 0; // competition ranking: ties share the smallest rank, next rank skips
};

struct rank_table {
    std::string indicator;
    std::vector<rank_row> rows; // value descending, ties displayed unit_id ascending
};

rank_table rank_units(const indicator_report& report, const std::string& by,
                      std::optional<int> top_n = std::nullopt);

struct compare_cell {
    std::string indicator;
    double value = 0.0;
    int rank = 0;
};

struct compare_row {
    std::string unit_id;
    compare_cell primary;
    std::vector<compare_cell> others;
};

struct comparison_table {
    std::string primary;
    std::vector<std::string> others;
    std::vector<compare_row> rows; // top_n units by the primary indicator
};

// Multi-indicator comparison: top_n units by the primary indicator, each
// cell carrying that indicator's value and rank among all units.
comparison_table compare_table(const indicator_report& report, const std::string& primary,
                               const std::vector<std::string>& others, int top_n);

} // namespace citemet
