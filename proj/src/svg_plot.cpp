#include "citemet/svg_plot.hpp"

#include <cstdio>
#include <fstream>

namespace citemet {

namespace {

constexpr double plot_size = 480.0; // drawable square, [-1,1] on both axes
constexpr double margin = 40.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

double to_px_x(double x) { return margin + (x + 1.0) / 2.0 * plot_size; }
double to_px_y(double y) { return margin + (1.0 - y) / 2.0 * plot_size; }

} // namespace

std::string loadings_svg(const factor_solution& fs, const std::vector<std::string>& labels) {
    if (labels.empty()) throw data_error("no variable labels supplied");
    if (labels.size() != fs.rotated.rows()) {
        throw data_error("label count " + std::to_string(labels.size()) +
                         " does not match variable count " + std::to_string(fs.rotated.rows()));
    }

    const double total = plot_size + 2.0 * margin;
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(total) + "\" height=\"" +
           num(total) + "\" viewBox=\"0 0 " + num(total) + " " + num(total) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(total) + "\" height=\"" + num(total) +
           "\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + num(margin) + "\" y=\"" + num(margin) + "\" width=\"" + num(plot_size) +
           "\" height=\"" + num(plot_size) + "\" fill=\"none\" stroke=\"#444444\"/>\n";
    // axes through the origin
    svg += "<line x1=\"" + num(to_px_x(-1.0)) + "\" y1=\"" + num(to_px_y(0.0)) + "\" x2=\"" +
           num(to_px_x(1.0)) + "\" y2=\"" + num(to_px_y(0.0)) + "\" stroke=\"#bbbbbb\"/>\n";
    svg += "<line x1=\"" + num(to_px_x(0.0)) + "\" y1=\"" + num(to_px_y(-1.0)) + "\" x2=\"" +
           num(to_px_x(0.0)) + "\" y2=\"" + num(to_px_y(1.0)) + "\" stroke=\"#bbbbbb\"/>\n";
    svg += "<text x=\"" + num(to_px_x(1.0) - 60.0) + "\" y=\"" + num(to_px_y(0.0) - 6.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">factor 1</text>\n";
    svg += "<text x=\"" + num(to_px_x(0.0) + 6.0) + "\" y=\"" + num(to_px_y(1.0) + 14.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">factor 2</text>\n";

    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double x = to_px_x(fs.rotated(i, 0));
        const double y = to_px_y(fs.rotated(i, 1));
        svg += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) +
               "\" r=\"4\" fill=\"#1f77b4\"/>\n";
        svg += "<text x=\"" + num(x + 6.0) + "\" y=\"" + num(y - 6.0) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + labels[i] + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_loadings_svg(const factor_solution& fs, const std::vector<std::string>& labels,
                       const std::filesystem::path& path) {
    std::string svg = loadings_svg(fs, labels);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write file: " + path.string());
    out << svg;
    if (!out) throw data_error("write failed: " + path.string());
}

} // namespace citemet
