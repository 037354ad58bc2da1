#include "citemet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace citemet {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(trim(line.substr(start)));
            break;
        }
        fields.emplace_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

// Reads one logical CSV line, tolerating CRLF endings and a UTF-8 BOM on
// the first line.
bool read_line(std::istream& in, std::string& line, bool first) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    return true;
}

void expect_header(const std::vector<std::string>& fields, const std::vector<std::string>& expected,
                   const std::filesystem::path& path) {
    if (fields != expected) {
        std::string want;
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) want += ',';
            want += expected[i];
        }
        throw data_error(path.string() + ": row 1: expected header '" + want + "'");
    }
}

std::int64_t parse_citations(const std::string& field, const std::filesystem::path& path,
                             std::size_t row) {
    std::int64_t value = 0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw data_error(path.string() + ": row " + std::to_string(row) +
                         ": citations must be a non-negative integer (got '" + field + "')");
    }
    if (value < 0) {
        throw data_error(path.string() + ": row " + std::to_string(row) +
                         ": citations must be non-negative (got '" + field + "')");
    }
    return value;
}

double parse_metric_value(const std::string& field, const std::filesystem::path& path,
                          std::size_t row) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || field.empty()) {
        throw data_error(path.string() + ": row " + std::to_string(row) +
                         ": value must be a decimal number (got '" + field + "')");
    }
    return value;
}

} // namespace

document_type_config document_type_config::standard() {
    return document_type_config{{"article", "review", "proceedings_paper", "letter"}};
}

std::optional<std::string> document_type_config::canonical(std::string_view token) const {
    std::string lowered = lower(trim(token));
    for (const auto& t : types) {
        if (t == lowered) return t;
    }
    return std::nullopt;
}

bool operator==(const paper_record& a, const paper_record& b) {
    return a.unit_id == b.unit_id && a.paper_id == b.paper_id && a.doc_type == b.doc_type &&
           a.citations == b.citations;
}

corpus corpus::from_records(std::vector<paper_record> records, document_type_config config) {
    corpus c;
    c.config_ = std::move(config);
    std::set<std::pair<std::string, std::string>> seen;
    for (auto& r : records) {
        auto canon = c.config_.canonical(r.doc_type);
        if (!canon) {
            throw data_error("unknown document type '" + r.doc_type + "' for paper '" +
                             r.paper_id + "'");
        }
        r.doc_type = *canon;
        if (r.citations < 0) {
            throw data_error("negative citations for paper '" + r.paper_id + "'");
        }
        if (!seen.emplace(r.unit_id, r.paper_id).second) {
            throw data_error("duplicate paper '" + r.paper_id + "' in unit '" + r.unit_id + "'");
        }
    }
    c.papers_ = std::move(records);
    for (std::size_t i = 0; i < c.papers_.size(); ++i) {
        c.unit_index_[c.papers_[i].unit_id].push_back(i);
    }
    c.units_.reserve(c.unit_index_.size());
    for (const auto& [unit, idx] : c.unit_index_) c.units_.push_back(unit);
    return c;
}

bool corpus::has_unit(const std::string& unit_id) const {
    return unit_index_.count(unit_id) != 0;
}

const std::vector<std::size_t>& corpus::unit_papers(const std::string& unit_id) const {
    auto it = unit_index_.find(unit_id);
    if (it == unit_index_.end()) throw data_error("unknown unit '" + unit_id + "'");
    return it->second;
}

std::optional<double> corpus::metric(const std::string& unit_id, const std::string& name) const {
    auto u = metrics_.find(unit_id);
    if (u == metrics_.end()) return std::nullopt;
    auto m = u->second.find(name);
    if (m == u->second.end()) return std::nullopt;
    return m->second;
}

std::vector<std::string> corpus::metric_names() const {
    std::set<std::string> names;
    for (const auto& [unit, metrics] : metrics_) {
        for (const auto& [name, value] : metrics) names.insert(name);
    }
    return {names.begin(), names.end()};
}

corpus corpus::with_external_metrics(
    std::map<std::string, std::map<std::string, double>> metrics) const {
    corpus c = *this;
    c.metrics_ = std::move(metrics);
    return c;
}

corpus load_papers(const std::filesystem::path& path, const document_type_config& config) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path.string());

    std::string line;
    if (!read_line(in, line, true)) throw data_error(path.string() + ": missing header row");
    expect_header(split_fields(line), {"unit_id", "paper_id", "doc_type", "citations"}, path);

    std::vector<paper_record> records;
    std::set<std::pair<std::string, std::string>> seen;
    std::size_t row = 1;
    while (read_line(in, line, false)) {
        ++row;
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 4) {
            throw data_error(path.string() + ": row " + std::to_string(row) + ": expected 4 fields, got " +
                             std::to_string(fields.size()));
        }
        paper_record r;
        r.unit_id = fields[0];
        r.paper_id = fields[1];
        if (r.unit_id.empty() || r.paper_id.empty()) {
            throw data_error(path.string() + ": row " + std::to_string(row) +
                             ": unit_id and paper_id must be non-empty");
        }
        auto canon = config.canonical(fields[2]);
        if (!canon) {
            throw data_error(path.string() + ": row " + std::to_string(row) +
                             ": unknown doc_type '" + fields[2] + "'");
        }
        r.doc_type = *canon;
        r.citations = parse_citations(fields[3], path, row);
        if (!seen.emplace(r.unit_id, r.paper_id).second) {
            throw data_error(path.string() + ": row " + std::to_string(row) + ": duplicate paper '" +
                             r.paper_id + "' in unit '" + r.unit_id + "'");
        }
        records.push_back(std::move(r));
    }
    return corpus::from_records(std::move(records), config);
}

void write_papers(const corpus& c, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write file: " + path.string());
    out << "unit_id,paper_id,doc_type,citations\n";
    for (const auto& p : c.papers()) {
        out << p.unit_id << ',' << p.paper_id << ',' << p.doc_type << ',' << p.citations << '\n';
    }
    if (!out) throw data_error("write failed: " + path.string());
}

join_result join_external_metrics(const corpus& c, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path.string());

    std::string line;
    if (!read_line(in, line, true)) throw data_error(path.string() + ": missing header row");
    expect_header(split_fields(line), {"unit_id", "metric_name", "value"}, path);

    join_result result;
    auto metrics = c.external_metrics();
    std::size_t row = 1;
    while (read_line(in, line, false)) {
        ++row;
        if (line.empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 3) {
            throw data_error(path.string() + ": row " + std::to_string(row) + ": expected 3 fields, got " +
                             std::to_string(fields.size()));
        }
        const std::string& unit = fields[0];
        const std::string& name = fields[1];
        if (unit.empty() || name.empty()) {
            throw data_error(path.string() + ": row " + std::to_string(row) +
                             ": unit_id and metric_name must be non-empty");
        }
        double value = parse_metric_value(fields[2], path, row);
        if (!c.has_unit(unit)) {
            result.warnings.push_back("row " + std::to_string(row) + ": unknown unit '" + unit +
                                      "' for metric '" + name + "'");
            continue;
        }
        auto [it, inserted] = metrics[unit].emplace(name, value);
        if (!inserted) {
            throw data_error(path.string() + ": row " + std::to_string(row) + ": duplicate metric '" +
                             name + "' for unit '" + unit + "'");
        }
    }
    result.joined = c.with_external_metrics(std::move(metrics));
    return result;
}

validation_report validate(const corpus& c) {
    validation_report report;
    if (c.empty()) {
        report.warnings.push_back("empty corpus");
        return report;
    }
    for (const auto& agg : type_aggregates(c)) {
        if (agg.total_citations == 0) {
            report.warnings.push_back("C_d = 0 for " + agg.doc_type);
        }
    }
    for (const auto& unit : c.units()) {
        if (c.unit_papers(unit).empty()) {
            report.warnings.push_back("unit '" + unit + "' has no papers");
        }
    }
    if (c.units().size() < 2) {
        report.warnings.push_back("fewer than 2 units (found " + std::to_string(c.units().size()) +
                                  ")");
    }
    return report;
}

unit_summary summarize_unit(const corpus& c, const std::string& unit_id) {
    unit_summary s;
    s.unit_id = unit_id;
    for (std::size_t idx : c.unit_papers(unit_id)) {
        const auto& p = c.papers()[idx];
        s.np += 1;
        s.tc += p.citations;
        auto& counts = s.per_type[p.doc_type];
        counts.total += 1;
        if (p.citations == 0) counts.uncited += 1;
    }
    if (s.np > 0) s.cpp = static_cast<double>(s.tc) / static_cast<double>(s.np);
    return s;
}

std::vector<type_aggregate> type_aggregates(const corpus& c) {
    if (c.empty()) throw data_error("empty corpus");
    std::map<std::string, type_aggregate> by_type;
    for (const auto& p : c.papers()) {
        auto& agg = by_type[p.doc_type];
        agg.doc_type = p.doc_type;
        agg.pub_count += 1;
        agg.total_citations += p.citations;
    }
    const double total = static_cast<double>(c.papers().size());
    std::vector<type_aggregate> out;
    // configured order, restricted to types present
    for (const auto& t : c.config().types) {
        auto it = by_type.find(t);
        if (it == by_type.end()) continue;
        it->second.ratio = static_cast<double>(it->second.pub_count) / total;
        out.push_back(it->second);
    }
    return out;
}

} // namespace citemet
