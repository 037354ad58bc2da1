#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "citemet/corpus.hpp"
#include "citemet/indicators.hpp"
#include "citemet/ranking.hpp"
#include "citemet/stats.hpp"

namespace citemet {

enum class output_format { csv, json, markdown };

std::string_view to_string(output_format f);
std::optional<output_format> parse_format(std::string_view token);

struct format_options {
    output_format format = output_format::csv;
    int decimals = 2; // display rounding; JSON always carries full precision
};

// All formatters are deterministic: identical inputs produce identical bytes.
// CSV uses '.' decimals, ',' separators and '\n' line endings.
std::string format_report(const indicator_report& report, const format_options& opt);
std::string format_rank_table(const rank_table& table, const format_options& opt);
std::string format_comparison(const comparison_table& table, const format_options& opt);
std::string format_correlation(const correlation_matrix& cm, const format_options& opt);
std::string format_factors(const factor_solution& fs, const std::vector<std::string>& labels,
                           const format_options& opt);
std::string format_validation(const validation_report& report, const format_options& opt);

} // namespace citemet
