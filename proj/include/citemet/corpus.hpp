#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "citemet/errors.hpp"

namespace citemet {

// Closed set of document types a corpus may contain. Tokens are canonical
// lowercase identifiers; CSV input is matched case-insensitively.
struct document_type_config {
    std::vector<std::string> types;

    static document_type_config standard(); // article, review, proceedings_paper, letter

    // Canonical token for a (possibly differently cased) input token,
    // or nullopt when the type is not in the configured set.
    std::optional<std::string> canonical(std::string_view token) const;
};

struct paper_record {
    std::string unit_id;
    std::string paper_id;
    std::string doc_type; // canonical token
    std::int64_t citations = 0;
};

bool operator==(const paper_record& a, const paper_record& b);

// Per document type d over the whole reference set: publication count,
// total citations C_d and publication ratio r_d.
struct type_aggregate {
    std::string doc_type;
    std::int64_t pub_count = 0;
    std::int64_t total_citations = 0; // C_d
    double ratio = 0.0;               // r_d = pub_count / total publications
};

// n_dj / n_dju for one (unit, type) pair.
struct type_counts {
    std::int64_t total = 0;   // n_dj
    std::int64_t uncited = 0; // n_dju
};

struct unit_summary {
    std::string unit_id;
    std::int64_t np = 0;
    std::int64_t tc = 0;
    double cpp = 0.0; // tc/np when np > 0
    std::map<std::string, type_counts> per_type;
};

struct validation_report {
    std::vector<std::string> warnings;
    bool clean() const { return warnings.empty(); }
};

// Immutable reference set: papers partitioned into units, plus optional
// externally supplied per-unit metrics. All accessors are safe to call
// concurrently once construction has finished.
class corpus {
public:
    corpus() = default; // empty corpus

    // Validates records (known type, citations >= 0, unique (unit, paper))
    // and builds the unit index. Throws data_error on violations.
    static corpus from_records(std::vector<paper_record> records,
                               document_type_config config = document_type_config::standard());

    bool empty() const { return papers_.empty(); }
    const std::vector<paper_record>& papers() const { return papers_; }
    const document_type_config& config() const { return config_; }

    // Distinct unit ids, ascending.
    const std::vector<std::string>& units() const { return units_; }
    bool has_unit(const std::string& unit_id) const;
    // Indices into papers() for one unit, in ingestion order. Throws on unknown unit.
    const std::vector<std::size_t>& unit_papers(const std::string& unit_id) const;

    const std::map<std::string, std::map<std::string, double>>& external_metrics() const {
        return metrics_;
    }
    std::optional<double> metric(const std::string& unit_id, const std::string& name) const;
    std::vector<std::string> metric_names() const; // union over units, ascending

    // Copy of this corpus with the given metrics attached.
    corpus with_external_metrics(std::map<std::string, std::map<std::string, double>> metrics) const;

private:
    std::vector<paper_record> papers_;
    std::vector<std::string> units_;
    std::map<std::string, std::vector<std::size_t>> unit_index_;
    std::map<std::string, std::map<std::string, double>> metrics_;
    document_type_config config_ = document_type_config::standard();
};

// CSV schema: header `unit_id,paper_id,doc_type,citations`, UTF-8, comma
// separated, no quoting. Errors carry the 1-based row number.
corpus load_papers(const std::filesystem::path& path,
                   const document_type_config& config = document_type_config::standard());

// Inverse of load_papers for round-tripping a corpus back to disk.
void write_papers(const corpus& c, const std::filesystem::path& path);

struct join_result {
    corpus joined;
    std::vector<std::string> warnings; // e.g. metric rows naming unknown units
};

// CSV schema: header `unit_id,metric_name,value`. Unknown units are
// reported as warnings; duplicate (unit, metric) pairs are errors.
join_result join_external_metrics(const corpus& c, const std::filesystem::path& path);

validation_report validate(const corpus& c);

unit_summary summarize_unit(const corpus& c, const std::string& unit_id);

// One aggregate per document type present, in configured type order.
// Ratios sum to 1 for a non-empty corpus. Throws on empty corpus.
std::vector<type_aggregate> type_aggregates(const corpus& c);

} // namespace citemet
