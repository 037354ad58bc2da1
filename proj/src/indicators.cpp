#include "citemet/indicators.hpp"

#include <algorithm>

namespace citemet {

namespace {

struct unit_type_stats {
    std::int64_t cited_sum = 0; // sum of C_i over the unit's papers of this type
    std::int64_t n = 0;         // n_dj
    std::int64_t uncited = 0;   // n_dju
};

// (unit, type) citation sums and counts, plus the reference-set aggregates.
struct indicator_inputs {
    std::vector<type_aggregate> aggregates;
    std::map<std::string, std::map<std::string, unit_type_stats>> per_unit;
};

indicator_inputs gather(const corpus& c) {
    indicator_inputs in;
    in.aggregates = type_aggregates(c); // throws on empty corpus
    for (const auto& unit : c.units()) {
        auto& types = in.per_unit[unit];
        for (std::size_t idx : c.unit_papers(unit)) {
            const auto& p = c.papers()[idx];
            auto& s = types[p.doc_type];
            s.cited_sum += p.citations;
            s.n += 1;
            if (p.citations == 0) s.uncited += 1;
        }
    }
    return in;
}

// Per-type CBI addend for one unit, before the final factor of 100.
double cbi_addend(const type_aggregate& agg, const unit_type_stats& s, bool normalized) {
    if (agg.total_citations == 0) return 0.0;
    const double weight = normalized ? agg.ratio : 1.0;
    return weight * static_cast<double>(s.cited_sum) / static_cast<double>(agg.total_citations);
}

// Per-type uncited-credit addend, before the final factor of 100.
double uncited_addend(const type_aggregate& agg, const unit_type_stats& s, bool normalized) {
    if (agg.total_citations == 0 || s.n == 0) return 0.0;
    const double weight = normalized ? agg.ratio : 1.0;
    const double cited_ratio = static_cast<double>(s.n - s.uncited) / static_cast<double>(s.n);
    return weight * (1.0 / static_cast<double>(agg.total_citations)) * cited_ratio *
           static_cast<double>(s.uncited);
}

const unit_type_stats* find_stats(const std::map<std::string, unit_type_stats>& types,
                                  const std::string& doc_type) {
    auto it = types.find(doc_type);
    return it == types.end() ? nullptr : &it->second;
}

} // namespace

std::map<std::string, double> cbi_scores(const corpus& c, indicator_config config) {
    indicator_inputs in = gather(c);
    std::map<std::string, double> out;
    for (const auto& [unit, types] : in.per_unit) {
        double sum = 0.0;
        for (const auto& agg : in.aggregates) {
            if (const auto* s = find_stats(types, agg.doc_type)) {
                sum += cbi_addend(agg, *s, config.normalized);
            }
        }
        out[unit] = 100.0 * sum;
    }
    return out;
}

std::map<std::string, double> cii_scores(const corpus& c, indicator_config config) {
    indicator_inputs in = gather(c);
    std::map<std::string, double> out;
    for (const auto& [unit, types] : in.per_unit) {
        double sum = 0.0;
        for (const auto& agg : in.aggregates) {
            if (const auto* s = find_stats(types, agg.doc_type)) {
                sum += cbi_addend(agg, *s, config.normalized) +
                       uncited_addend(agg, *s, config.normalized);
            }
        }
        out[unit] = 100.0 * sum;
    }
    return out;
}

std::vector<type_contribution> type_contributions(const corpus& c, const std::string& unit_id,
                                                  indicator_config config) {
    indicator_inputs in = gather(c);
    auto it = in.per_unit.find(unit_id);
    if (it == in.per_unit.end()) throw data_error("unknown unit '" + unit_id + "'");

    std::vector<type_contribution> out;
    for (const auto& agg : in.aggregates) {
        const auto* s = find_stats(it->second, agg.doc_type);
        type_contribution contrib;
        contrib.doc_type = agg.doc_type;
        if (s) {
            contrib.cbi = 100.0 * cbi_addend(agg, *s, config.normalized);
            contrib.cii = contrib.cbi + 100.0 * uncited_addend(agg, *s, config.normalized);
        }
        out.push_back(contrib);
    }
    return out;
}

const std::vector<std::string>& indicator_report::core_columns() {
    static const std::vector<std::string> cols = {"np",   "tc",   "cpp", "cbi1",    "cbi2",
                                                  "cii1", "cii2", "i3",  "i3_share"};
    return cols;
}

std::vector<std::string> indicator_report::columns() const {
    std::vector<std::string> cols = core_columns();
    cols.insert(cols.end(), metric_names.begin(), metric_names.end());
    return cols;
}

bool indicator_report::has_column(const std::string& name) const {
    const auto& core = core_columns();
    if (std::find(core.begin(), core.end(), name) != core.end()) {
        if (name != "i3_share") return true;
        return std::all_of(rows.begin(), rows.end(),
                           [](const report_row& r) { return r.i3_share.has_value(); });
    }
    return std::all_of(rows.begin(), rows.end(),
                       [&](const report_row& r) { return r.metrics.count(name) != 0; });
}

std::vector<double> indicator_report::column(const std::string& name) const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        if (name == "np") out.push_back(static_cast<double>(r.np));
        else if (name == "tc") out.push_back(static_cast<double>(r.tc));
        else if (name == "cpp") out.push_back(r.cpp);
        else if (name == "cbi1") out.push_back(r.cbi1);
        else if (name == "cbi2") out.push_back(r.cbi2);
        else if (name == "cii1") out.push_back(r.cii1);
        else if (name == "cii2") out.push_back(r.cii2);
        else if (name == "i3") out.push_back(r.i3);
        else if (name == "i3_share") {
            if (!r.i3_share) {
                throw data_error("column 'i3_share' undefined for unit '" + r.unit_id + "'");
            }
            out.push_back(*r.i3_share);
        } else {
            auto it = r.metrics.find(name);
            if (it == r.metrics.end()) {
                throw data_error("column '" + name + "' missing for unit '" + r.unit_id + "'");
            }
            out.push_back(it->second);
        }
    }
    return out;
}

const report_row& indicator_report::row(const std::string& unit_id) const {
    for (const auto& r : rows) {
        if (r.unit_id == unit_id) return r;
    }
    throw data_error("unknown unit '" + unit_id + "'");
}

indicator_report indicator_suite(const corpus& c, percentile_scheme scheme) {
    indicator_report report;
    report.scheme = scheme;
    report.metric_names = c.metric_names();

    auto cbi1 = cbi_scores(c, {.normalized = false});
    auto cbi2 = cbi_scores(c, {.normalized = true});
    auto cii1 = cii_scores(c, {.normalized = false});
    auto cii2 = cii_scores(c, {.normalized = true});
    auto i3 = i3_scores(c, scheme);

    for (const auto& unit : c.units()) {
        unit_summary s = summarize_unit(c, unit);
        report_row row;
        row.unit_id = unit;
        row.np = s.np;
        row.tc = s.tc;
        row.cpp = s.cpp;
        row.cbi1 = cbi1.at(unit);
        row.cbi2 = cbi2.at(unit);
        row.cii1 = cii1.at(unit);
        row.cii2 = cii2.at(unit);
        row.i3 = i3.at(unit).i3;
        row.i3_share = i3.at(unit).share;
        if (auto m = c.external_metrics().find(unit); m != c.external_metrics().end()) {
            row.metrics = m->second;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace citemet
