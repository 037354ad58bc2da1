#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "citemet/errors.hpp"
#include "citemet/indicators.hpp"

namespace citemet {

// Dense row-major matrix, just big enough for the correlation and factor
// machinery here.
class matrix {
public:
    matrix() = default;
    matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

matrix multiply(const matrix& a, const matrix& b);

// Sample Pearson correlation. Requires equal lengths >= 3 and neither
// vector constant; violations throw with the offending condition named.
double pearson(std::span<const double> x, std::span<const double> y);

// 1-based ranks, ties averaged over the rank positions they occupy.
std::vector<double> average_ranks(std::span<const double> v);

// Pearson correlation of the average-rank transforms.
double spearman(std::span<const double> x, std::span<const double> y);

enum class correlation_method { pearson, spearman };

std::string_view to_string(correlation_method m);
std::optional<correlation_method> parse_method(std::string_view token);

struct correlation_matrix {
    std::vector<std::string> labels;
    matrix values; // symmetric, unit diagonal
    correlation_method method = correlation_method::pearson;
};

// Pairwise correlations of report columns across units. Requires >= 3 units
// and non-constant columns.
correlation_matrix correlate_columns(const indicator_report& report,
                                     const std::vector<std::string>& columns,
                                     correlation_method method);

struct eigen_result {
    std::vector<double> values; // descending
    matrix vectors;             // orthonormal, column k pairs with values[k]
};

// Cyclic Jacobi sweeps until every off-diagonal entry is below 1e-12
// (at most 100 sweeps). Input must be symmetric, dimension <= 64.
eigen_result jacobi_eigen(const matrix& m);

struct factor_solution {
    std::vector<double> eigenvalues; // all, descending
    matrix unrotated;                // p x 2 principal-component loadings
    matrix rotated;                  // p x 2 varimax-rotated loadings
    matrix rotation;                 // 2 x 2 orthogonal, rotated = unrotated * rotation
    int iterations = 0;
    // Varimax criterion of the Kaiser-normalized loadings, entry 0 before
    // rotation and one entry per iteration after it. Non-decreasing.
    std::vector<double> criterion_trace;
};

// Raw varimax criterion: sum_k [ sum_i L_ik^4 - (sum_i L_ik^2)^2 / p ].
double varimax_criterion(const matrix& loadings);

// Rows scaled to unit length (communality); zero rows stay zero.
matrix kaiser_normalize_rows(const matrix& loadings);

// Principal-component loadings for the two largest eigenvalues, then a
// planar varimax rotation with Kaiser row-normalization. Deterministic sign
// convention: each factor's largest-magnitude loading is positive.
factor_solution two_factor_varimax(const correlation_matrix& cm);

} // namespace citemet
