#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "citemet/stats.hpp"

namespace citemet {

// Self-contained SVG scatter of the rotated loadings, axes [-1,1] x [-1,1],
// one labelled point per variable. Byte-deterministic for a given solution.
std::string loadings_svg(const factor_solution& fs, const std::vector<std::string>& labels);

void emit_loadings_svg(const factor_solution& fs, const std::vector<std::string>& labels,
                       const std::filesystem::path& path);

} // namespace citemet
