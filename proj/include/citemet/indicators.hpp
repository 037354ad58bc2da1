#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citemet/corpus.hpp"
#include "citemet/percentiles.hpp"

namespace citemet {

// normalized = true weights every per-type addend by that type's reference-set
// publication ratio r_d. A document type with C_d = 0 contributes 0 to both
// indicators, including the uncited term where 1/C_d would be undefined.
struct indicator_config {
    bool normalized = true;
};

// CBI_j = 100 * sum_d [r_d] * (sum of the unit's citations of type d) / C_d
std::map<std::string, double> cbi_scores(const corpus& c, indicator_config config);

// CII_j = CBI_j + 100 * sum_d [r_d] * (1/C_d) * ((n_dj - n_dju)/n_dj) * n_dju,
// the uncited term vanishing when n_dj = 0 or C_d = 0.
std::map<std::string, double> cii_scores(const corpus& c, indicator_config config);

// Per-type addends of one unit's CBI and CII before summation.
struct type_contribution {
    std::string doc_type;
    double cbi = 0.0;
    double cii = 0.0;
};

std::vector<type_contribution> type_contributions(const corpus& c, const std::string& unit_id,
                                                  indicator_config config);

struct report_row {
    std::string unit_id;
    std::int64_t np = 0;
    std::int64_t tc = 0;
    double cpp = 0.0;
    double cbi1 = 0.0;
    double cbi2 = 0.0;
    double cii1 = 0.0;
    double cii2 = 0.0;
    double i3 = 0.0;
    std::optional<double> i3_share;
    std::map<std::string, double> metrics; // joined external metrics, if any
};

struct indicator_report {
    percentile_scheme scheme = percentile_scheme::exclusive;
    std::vector<report_row> rows;          // unit_id ascending
    std::vector<std::string> metric_names; // union over rows, ascending

    static const std::vector<std::string>& core_columns();
    std::vector<std::string> columns() const; // core columns + metric names

    // True when every row carries the column (metrics may be sparse).
    bool has_column(const std::string& name) const;
    // Column values in row order; throws naming the column/unit when absent.
    std::vector<double> column(const std::string& name) const;

    const report_row& row(const std::string& unit_id) const;
};

// Full per-unit table: NP, TC, CPP, CBI(1), CBI(2), CII(1), CII(2), I3 and
// I3 share, plus any joined external metrics.
indicator_report indicator_suite(const corpus& c, percentile_scheme scheme);

} // namespace citemet
