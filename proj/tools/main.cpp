#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "citemet/corpus.hpp"
#include "citemet/indicators.hpp"
#include "citemet/percentiles.hpp"
#include "citemet/ranking.hpp"
#include "citemet/report_io.hpp"
#include "citemet/stats.hpp"
#include "citemet/svg_plot.hpp"

namespace {

using namespace citemet;

struct common_options {
    std::string papers;
    std::string metrics;
    std::string scheme = "exclusive";
    std::string format = "csv";
    int decimals = 2;
};

void add_common(CLI::App* cmd, common_options& opt, bool with_scheme = true) {
    cmd->add_option("--papers", opt.papers, "papers CSV (unit_id,paper_id,doc_type,citations)")
        ->required();
    cmd->add_option("--metrics", opt.metrics, "external metrics CSV (unit_id,metric_name,value)");
    if (with_scheme) {
        cmd->add_option("--scheme", opt.scheme, "percentile scheme for I3")
            ->check(CLI::IsMember({"inclusive", "exclusive"}));
    }
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "md"}));
    cmd->add_option("--decimals", opt.decimals, "display decimals (csv/md)")
        ->check(CLI::Range(0, 12));
}

corpus load_with_metrics(const common_options& opt, std::ostream& warn_stream) {
    corpus c = load_papers(opt.papers);
    if (!opt.metrics.empty()) {
        auto joined = join_external_metrics(c, opt.metrics);
        for (const auto& w : joined.warnings) warn_stream << "warning: " << w << "\n";
        c = std::move(joined.joined);
    }
    return c;
}

format_options format_of(const common_options& opt) {
    return {*parse_format(opt.format), opt.decimals};
}

std::vector<std::string> default_columns() {
    return {"np", "tc", "cpp", "cbi1", "cbi2", "cii1", "cii2", "i3"};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"citation impact indicators: percentile ranks, I3, CBI, CII, correlations,"
                 " two-factor varimax and rankings"};
    app.require_subcommand(1);

    common_options validate_opt;
    auto* validate_cmd = app.add_subcommand("validate", "report corpus anomalies");
    add_common(validate_cmd, validate_opt, false);

    common_options ind_opt;
    auto* ind_cmd = app.add_subcommand("indicators", "per-unit indicator report");
    add_common(ind_cmd, ind_opt);

    common_options rank_opt;
    std::string rank_by;
    int rank_top = -1;
    std::vector<std::string> rank_others;
    auto* rank_cmd = app.add_subcommand("rank", "rank units by an indicator");
    add_common(rank_cmd, rank_opt);
    rank_cmd->add_option("--by", rank_by, "indicator to rank by")->required();
    rank_cmd->add_option("--top", rank_top, "keep the top N units")
        ->check(CLI::NonNegativeNumber);
    rank_cmd->add_option("--others", rank_others,
                         "comparison indicators; emits a value[rank] comparison table")
        ->delimiter(',');

    common_options corr_opt;
    std::string corr_method = "pearson";
    std::vector<std::string> corr_columns = default_columns();
    auto* corr_cmd = app.add_subcommand("correlate", "correlation matrix of indicator columns");
    add_common(corr_cmd, corr_opt);
    corr_cmd->add_option("--method", corr_method, "correlation method")
        ->check(CLI::IsMember({"pearson", "spearman"}));
    corr_cmd->add_option("--columns", corr_columns, "columns to correlate")->delimiter(',');

    common_options fact_opt;
    std::string fact_method = "pearson";
    std::vector<std::string> fact_columns = default_columns();
    std::string fact_svg;
    auto* fact_cmd = app.add_subcommand("factors", "varimax-rotated two-factor solution");
    add_common(fact_cmd, fact_opt);
    fact_cmd->add_option("--method", fact_method, "correlation method behind the solution")
        ->check(CLI::IsMember({"pearson", "spearman"}));
    fact_cmd->add_option("--columns", fact_columns, "columns to factor")->delimiter(',');
    fact_cmd->add_option("--svg", fact_svg, "write a loadings scatter plot to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(validate_cmd)) {
            corpus c = load_with_metrics(validate_opt, std::cerr);
            std::cout << format_validation(validate(c), format_of(validate_opt));
        } else if (app.got_subcommand(ind_cmd)) {
            corpus c = load_with_metrics(ind_opt, std::cerr);
            auto report = indicator_suite(c, *parse_scheme(ind_opt.scheme));
            std::cout << format_report(report, format_of(ind_opt));
        } else if (app.got_subcommand(rank_cmd)) {
            corpus c = load_with_metrics(rank_opt, std::cerr);
            auto report = indicator_suite(c, *parse_scheme(rank_opt.scheme));
            if (rank_others.empty()) {
                std::optional<int> top;
                if (rank_cmd->count("--top")) top = rank_top;
                std::cout << format_rank_table(rank_units(report, rank_by, top),
                                               format_of(rank_opt));
            } else {
                int top = rank_cmd->count("--top") ? rank_top
                                                   : static_cast<int>(report.rows.size());
                std::cout << format_comparison(compare_table(report, rank_by, rank_others, top),
                                               format_of(rank_opt));
            }
        } else if (app.got_subcommand(corr_cmd)) {
            corpus c = load_with_metrics(corr_opt, std::cerr);
            auto report = indicator_suite(c, *parse_scheme(corr_opt.scheme));
            auto cm = correlate_columns(report, corr_columns, *parse_method(corr_method));
            std::cout << format_correlation(cm, format_of(corr_opt));
        } else if (app.got_subcommand(fact_cmd)) {
            corpus c = load_with_metrics(fact_opt, std::cerr);
            auto report = indicator_suite(c, *parse_scheme(fact_opt.scheme));
            auto cm = correlate_columns(report, fact_columns, *parse_method(fact_method));
            auto solution = two_factor_varimax(cm);
            std::cout << format_factors(solution, cm.labels, format_of(fact_opt));
            if (!fact_svg.empty()) emit_loadings_svg(solution, cm.labels, fact_svg);
        }
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
