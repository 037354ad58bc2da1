#include "citemet/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace citemet {

matrix matrix::identity(std::size_t n) {
    matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

matrix multiply(const matrix& a, const matrix& b) {
    if (a.cols() != b.rows()) throw data_error("matrix dimension mismatch in multiply");
    matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw data_error("length mismatch: " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
    }
    const std::size_t n = x.size();
    if (n < 3) throw data_error("need at least 3 observations, got " + std::to_string(n));

    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw data_error("first vector is constant");
    if (syy == 0.0) throw data_error("second vector is constant");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        // positions i..j (0-based) share the mean of ranks i+1..j+1
        const double avg = static_cast<double>(i + j) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw data_error("length mismatch: " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
    }
    auto rx = average_ranks(x);
    auto ry = average_ranks(y);
    return pearson(rx, ry);
}

std::string_view to_string(correlation_method m) {
    return m == correlation_method::pearson ? "pearson" : "spearman";
}

std::optional<correlation_method> parse_method(std::string_view token) {
    if (token == "pearson") return correlation_method::pearson;
    if (token == "spearman") return correlation_method::spearman;
    return std::nullopt;
}

correlation_matrix correlate_columns(const indicator_report& report,
                                     const std::vector<std::string>& columns,
                                     correlation_method method) {
    if (report.rows.size() < 3) {
        throw data_error("need at least 3 units, got " + std::to_string(report.rows.size()));
    }
    std::vector<std::vector<double>> data;
    data.reserve(columns.size());
    for (const auto& name : columns) {
        auto values = report.column(name); // throws naming a missing column
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        if (*lo == *hi) throw data_error("constant column: " + name);
        data.push_back(std::move(values));
    }

    correlation_matrix cm;
    cm.labels = columns;
    cm.method = method;
    cm.values = matrix(columns.size(), columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) {
        cm.values(i, i) = 1.0;
        for (std::size_t j = i + 1; j < columns.size(); ++j) {
            const double r = method == correlation_method::pearson
                                 ? pearson(data[i], data[j])
                                 : spearman(data[i], data[j]);
            cm.values(i, j) = r;
            cm.values(j, i) = r;
        }
    }
    return cm;
}

namespace {

constexpr double jacobi_tolerance = 1e-12;
constexpr int jacobi_max_sweeps = 100;
constexpr double varimax_tolerance = 1e-8;
constexpr int varimax_max_iterations = 100;

double max_off_diagonal(const matrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j)));
        }
    }
    return m;
}

} // namespace

eigen_result jacobi_eigen(const matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) throw data_error("matrix must be square and non-empty");
    if (n > 64) throw data_error("matrix dimension exceeds 64: " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > 1e-12) {
                throw data_error("matrix is not symmetric at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
            }
        }
    }

    matrix a = m;
    matrix v = matrix::identity(n);

    bool converged = max_off_diagonal(a) < jacobi_tolerance;
    for (int sweep = 0; sweep < jacobi_max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 1.0 / (2.0 * theta); // limit form, avoids theta^2 overflow
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = s * akp + c * akq;
                    a(q, k) = a(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        converged = max_off_diagonal(a) < jacobi_tolerance;
    }
    if (!converged) {
        throw data_error("jacobi_eigen did not converge within " +
                         std::to_string(jacobi_max_sweeps) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    eigen_result result;
    result.values.reserve(n);
    result.vectors = matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        result.values.push_back(a(order[k], order[k]));
        for (std::size_t i = 0; i < n; ++i) result.vectors(i, k) = v(i, order[k]);
    }
    return result;
}

double varimax_criterion(const matrix& loadings) {
    const double p = static_cast<double>(loadings.rows());
    double crit = 0.0;
    for (std::size_t k = 0; k < loadings.cols(); ++k) {
        double sum2 = 0.0, sum4 = 0.0;
        for (std::size_t i = 0; i < loadings.rows(); ++i) {
            const double sq = loadings(i, k) * loadings(i, k);
            sum2 += sq;
            sum4 += sq * sq;
        }
        crit += sum4 - sum2 * sum2 / p;
    }
    return crit;
}

matrix kaiser_normalize_rows(const matrix& loadings) {
    matrix out = loadings;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        double h2 = 0.0;
        for (std::size_t k = 0; k < out.cols(); ++k) h2 += out(i, k) * out(i, k);
        if (h2 <= 0.0) continue;
        const double h = std::sqrt(h2);
        for (std::size_t k = 0; k < out.cols(); ++k) out(i, k) /= h;
    }
    return out;
}

namespace {

// Flips columns so each column's largest-magnitude entry is positive.
// Returns the diagonal of the applied sign matrix.
std::vector<double> fix_column_signs(matrix& loadings) {
    std::vector<double> signs(loadings.cols(), 1.0);
    for (std::size_t k = 0; k < loadings.cols(); ++k) {
        double best = 0.0;
        for (std::size_t i = 0; i < loadings.rows(); ++i) {
            if (std::abs(loadings(i, k)) > std::abs(best)) best = loadings(i, k);
        }
        if (best < 0.0) {
            signs[k] = -1.0;
            for (std::size_t i = 0; i < loadings.rows(); ++i) loadings(i, k) = -loadings(i, k);
        }
    }
    return signs;
}

// Optimal planar varimax angle for a two-column loading matrix.
double varimax_angle(const matrix& l) {
    const double p = static_cast<double>(l.rows());
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i) {
        const double u = l(i, 0) * l(i, 0) - l(i, 1) * l(i, 1);
        const double w = 2.0 * l(i, 0) * l(i, 1);
        a += u;
        b += w;
        c += u * u - w * w;
        d += u * w;
    }
    const double num = 2.0 * (d - a * b / p);
    const double den = c - (a * a - b * b) / p;
    if (num == 0.0 && den == 0.0) return 0.0;
    return 0.25 * std::atan2(num, den);
}

matrix planar_rotation(double angle) {
    matrix r(2, 2);
    r(0, 0) = std::cos(angle);
    r(1, 0) = std::sin(angle);
    r(0, 1) = -std::sin(angle);
    r(1, 1) = std::cos(angle);
    return r;
}

} // namespace

factor_solution two_factor_varimax(const correlation_matrix& cm) {
    const std::size_t p = cm.values.rows();
    if (p < 3) throw data_error("need at least 3 variables, got " + std::to_string(p));

    eigen_result eig = jacobi_eigen(cm.values);
    // eigenvalues within rounding noise of zero count as non-positive
    const double positive_floor = 1e-12 * std::max(1.0, std::abs(eig.values[0]));
    if (eig.values[1] <= positive_floor) {
        throw data_error("fewer than 2 positive eigenvalues; two-factor extraction impossible");
    }

    factor_solution fs;
    fs.eigenvalues = eig.values;
    fs.unrotated = matrix(p, 2);
    for (std::size_t k = 0; k < 2; ++k) {
        const double scale = std::sqrt(eig.values[k]);
        for (std::size_t i = 0; i < p; ++i) fs.unrotated(i, k) = eig.vectors(i, k) * scale;
    }
    fix_column_signs(fs.unrotated);

    // Rotation runs on Kaiser-normalized loadings; row scaling commutes with
    // the column rotation, so the accumulated rotation applies to the raw
    // loadings unchanged.
    matrix normalized = kaiser_normalize_rows(fs.unrotated);
    matrix rotation = matrix::identity(2);
    fs.criterion_trace.push_back(varimax_criterion(normalized));

    bool converged = false;
    while (fs.iterations < varimax_max_iterations) {
        const double angle = varimax_angle(normalized);
        const matrix step = planar_rotation(angle);
        matrix candidate = multiply(normalized, step);
        const double crit = varimax_criterion(candidate);
        const double gain = crit - fs.criterion_trace.back();
        if (gain <= 0.0) {
            converged = true; // already at the planar optimum
            break;
        }
        normalized = std::move(candidate);
        rotation = multiply(rotation, step);
        fs.criterion_trace.push_back(crit);
        fs.iterations += 1;
        if (gain < varimax_tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        throw data_error("varimax rotation did not converge within " +
                         std::to_string(varimax_max_iterations) + " iterations");
    }

    fs.rotated = multiply(fs.unrotated, rotation);
    const auto signs = fix_column_signs(fs.rotated);
    for (std::size_t k = 0; k < 2; ++k) {
        rotation(0, k) *= signs[k];
        rotation(1, k) *= signs[k];
    }
    fs.rotation = rotation;
    return fs;
}

} // namespace citemet
