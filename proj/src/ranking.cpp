#include "citemet/ranking.hpp"

#include <algorithm>

namespace citemet {

namespace {

// Competition-ranked rows for one indicator, all units, value descending
// with unit_id as the display tie-break.
std::vector<rank_row> ranked_rows(const indicator_report& report, const std::string& by) {
    auto values = report.column(by);
    std::vector<rank_row> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        rows.push_back({report.rows[i].unit_id, values[i], 0});
    }
    std::sort(rows.begin(), rows.end(), [](const rank_row& a, const rank_row& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.unit_id < b.unit_id;
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].rank = (i > 0 && rows[i].value == rows[i - 1].value)
                           ? rows[i - 1].rank
                           : static_cast<int>(i + 1);
    }
    return rows;
}

} // namespace

rank_table rank_units(const indicator_report& report, const std::string& by,
                      std::optional<int> top_n) {
    rank_table table;
    table.indicator = by;
    table.rows = ranked_rows(report, by);
    if (top_n && *top_n >= 0 && static_cast<std::size_t>(*top_n) < table.rows.size()) {
        table.rows.resize(static_cast<std::size_t>(*top_n));
    }
    return table;
}

comparison_table compare_table(const indicator_report& report, const std::string& primary,
                               const std::vector<std::string>& others, int top_n) {
    comparison_table table;
    table.primary = primary;
    table.others = others;

    std::map<std::string, std::vector<rank_row>> ranked;
    ranked[primary] = ranked_rows(report, primary);
    for (const auto& name : others) {
        if (!ranked.count(name)) ranked[name] = ranked_rows(report, name);
    }

    auto cell_for = [&](const std::string& indicator, const std::string& unit) {
        for (const auto& r : ranked.at(indicator)) {
            if (r.unit_id == unit) return compare_cell{indicator, r.value, r.rank};
        }
        throw data_error("unknown unit '" + unit + "'");
    };

    const auto& order = ranked.at(primary);
    const std::size_t limit = std::min<std::size_t>(order.size(),
                                                    top_n < 0 ? 0 : static_cast<std::size_t>(top_n));
    for (std::size_t i = 0; i < limit; ++i) {
        compare_row row;
        row.unit_id = order[i].unit_id;
        row.primary = compare_cell{primary, order[i].value, order[i].rank};
        for (const auto& name : others) row.others.push_back(cell_for(name, row.unit_id));
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace citemet
