#include "citemet/report_io.hpp"

#include <cstdio>

#include "json.hpp"

namespace citemet {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string bracketed(const compare_cell& cell, int decimals) {
    return fixed(cell.value, decimals) + "[" + std::to_string(cell.rank) + "]";
}

// Rows of string cells rendered as CSV or a markdown pipe table.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows, output_format format) {
    std::string out;
    if (format == output_format::markdown) {
        out += "|";
        for (const auto& h : header) out += " " + h + " |";
        out += "\n|";
        for (std::size_t i = 0; i < header.size(); ++i) out += " --- |";
        out += "\n";
        for (const auto& row : rows) {
            out += "|";
            for (const auto& cell : row) out += " " + cell + " |";
            out += "\n";
        }
    } else {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out += ',';
            out += header[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ',';
                out += row[i];
            }
            out += '\n';
        }
    }
    return out;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string_view to_string(output_format f) {
    switch (f) {
        case output_format::csv: return "csv";
        case output_format::json: return "json";
        case output_format::markdown: return "md";
    }
    return "csv";
}

std::optional<output_format> parse_format(std::string_view token) {
    if (token == "csv") return output_format::csv;
    if (token == "json") return output_format::json;
    if (token == "md") return output_format::markdown;
    return std::nullopt;
}

std::string format_report(const indicator_report& report, const format_options& opt) {
    if (opt.format == output_format::json) {
        ordered_json j;
        j["scheme"] = std::string(to_string(report.scheme));
        j["units"] = ordered_json::array();
        for (const auto& r : report.rows) {
            ordered_json row;
            row["unit_id"] = r.unit_id;
            row["np"] = r.np;
            row["tc"] = r.tc;
            row["cpp"] = r.cpp;
            row["cbi1"] = r.cbi1;
            row["cbi2"] = r.cbi2;
            row["cii1"] = r.cii1;
            row["cii2"] = r.cii2;
            row["i3"] = r.i3;
            if (r.i3_share) row["i3_share"] = *r.i3_share;
            else row["i3_share"] = nullptr;
            ordered_json metrics = ordered_json::object();
            for (const auto& [name, value] : r.metrics) metrics[name] = value;
            row["metrics"] = metrics;
            j["units"].push_back(row);
        }
        return dump(j);
    }

    std::vector<std::string> header = {"unit_id", "np",   "tc",   "cpp", "cbi1",
                                       "cbi2",    "cii1", "cii2", "i3",  "i3_share"};
    header.insert(header.end(), report.metric_names.begin(), report.metric_names.end());
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : report.rows) {
        std::vector<std::string> row = {r.unit_id,
                                        std::to_string(r.np),
                                        std::to_string(r.tc),
                                        fixed(r.cpp, opt.decimals),
                                        fixed(r.cbi1, opt.decimals),
                                        fixed(r.cbi2, opt.decimals),
                                        fixed(r.cii1, opt.decimals),
                                        fixed(r.cii2, opt.decimals),
                                        fixed(r.i3, opt.decimals),
                                        r.i3_share ? fixed(*r.i3_share, opt.decimals) : ""};
        for (const auto& name : report.metric_names) {
            auto it = r.metrics.find(name);
            row.push_back(it == r.metrics.end() ? "" : fixed(it->second, opt.decimals));
        }
        rows.push_back(std::move(row));
    }
    return render_table(header, rows, opt.format);
}

std::string format_rank_table(const rank_table& table, const format_options& opt) {
    if (opt.format == output_format::json) {
        ordered_json j;
        j["indicator"] = table.indicator;
        j["rows"] = ordered_json::array();
        for (const auto& r : table.rows) {
            j["rows"].push_back({{"rank", r.rank}, {"unit_id", r.unit_id}, {"value", r.value}});
        }
        return dump(j);
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : table.rows) {
        rows.push_back({std::to_string(r.rank), r.unit_id, fixed(r.value, opt.decimals)});
    }
    return render_table({"rank", "unit_id", table.indicator}, rows, opt.format);
}

std::string format_comparison(const comparison_table& table, const format_options& opt) {
    if (opt.format == output_format::json) {
        ordered_json j;
        j["primary"] = table.primary;
        j["rows"] = ordered_json::array();
        for (const auto& r : table.rows) {
            ordered_json row;
            row["unit_id"] = r.unit_id;
            row[r.primary.indicator] = {{"value", r.primary.value}, {"rank", r.primary.rank}};
            for (const auto& cell : r.others) {
                row[cell.indicator] = {{"value", cell.value}, {"rank", cell.rank}};
            }
            j["rows"].push_back(row);
        }
        return dump(j);
    }
    std::vector<std::string> header = {"unit_id", table.primary};
    header.insert(header.end(), table.others.begin(), table.others.end());
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : table.rows) {
        std::vector<std::string> row = {r.unit_id, bracketed(r.primary, opt.decimals)};
        for (const auto& cell : r.others) row.push_back(bracketed(cell, opt.decimals));
        rows.push_back(std::move(row));
    }
    return render_table(header, rows, opt.format);
}

std::string format_correlation(const correlation_matrix& cm, const format_options& opt) {
    if (opt.format == output_format::json) {
        ordered_json j;
        j["method"] = std::string(to_string(cm.method));
        j["labels"] = cm.labels;
        j["values"] = ordered_json::array();
        for (std::size_t i = 0; i < cm.values.rows(); ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t k = 0; k < cm.values.cols(); ++k) row.push_back(cm.values(i, k));
            j["values"].push_back(row);
        }
        return dump(j);
    }
    std::vector<std::string> header = {"indicator"};
    header.insert(header.end(), cm.labels.begin(), cm.labels.end());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < cm.values.rows(); ++i) {
        std::vector<std::string> row = {cm.labels[i]};
        for (std::size_t k = 0; k < cm.values.cols(); ++k) {
            row.push_back(fixed(cm.values(i, k), opt.decimals));
        }
        rows.push_back(std::move(row));
    }
    return render_table(header, rows, opt.format);
}

std::string format_factors(const factor_solution& fs, const std::vector<std::string>& labels,
                           const format_options& opt) {
    if (labels.size() != fs.rotated.rows()) {
        throw data_error("label count " + std::to_string(labels.size()) +
                         " does not match variable count " + std::to_string(fs.rotated.rows()));
    }
    if (opt.format == output_format::json) {
        ordered_json j;
        j["eigenvalues"] = fs.eigenvalues;
        j["iterations"] = fs.iterations;
        j["rotation"] = {{fs.rotation(0, 0), fs.rotation(0, 1)},
                         {fs.rotation(1, 0), fs.rotation(1, 1)}};
        j["variables"] = ordered_json::array();
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const double communality = fs.rotated(i, 0) * fs.rotated(i, 0) +
                                       fs.rotated(i, 1) * fs.rotated(i, 1);
            j["variables"].push_back({{"name", labels[i]},
                                      {"unrotated", {fs.unrotated(i, 0), fs.unrotated(i, 1)}},
                                      {"rotated", {fs.rotated(i, 0), fs.rotated(i, 1)}},
                                      {"communality", communality}});
        }
        return dump(j);
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double communality =
            fs.rotated(i, 0) * fs.rotated(i, 0) + fs.rotated(i, 1) * fs.rotated(i, 1);
        rows.push_back({labels[i], fixed(fs.unrotated(i, 0), opt.decimals),
                        fixed(fs.unrotated(i, 1), opt.decimals), fixed(fs.rotated(i, 0), opt.decimals),
                        fixed(fs.rotated(i, 1), opt.decimals), fixed(communality, opt.decimals)});
    }
    return render_table(
        {"variable", "unrotated_f1", "unrotated_f2", "rotated_f1", "rotated_f2", "communality"},
        rows, opt.format);
}

std::string format_validation(const validation_report& report, const format_options& opt) {
    if (opt.format == output_format::json) {
        ordered_json j;
        j["warnings"] = report.warnings;
        return dump(j);
    }
    if (opt.format == output_format::markdown) {
        if (report.warnings.empty()) return "no warnings\n";
        std::string out;
        for (const auto& w : report.warnings) out += "- " + w + "\n";
        return out;
    }
    std::string out = "warning\n";
    for (const auto& w : report.warnings) out += w + "\n";
    return out;
}

} // namespace citemet
