#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "citemet/stats.hpp"
#include "test_support.hpp"

using namespace citemet;

namespace {

// Independent pearson: one-pass product-moment form, distinct from the
// implementation's centered two-pass form.
double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

std::vector<double> random_vector(std::mt19937& rng, std::size_t n, bool with_ties) {
    std::vector<double> v(n);
    if (with_ties) {
        std::uniform_int_distribution<int> d(0, 12); // small support forces ties
        for (auto& x : v) x = static_cast<double>(d(rng));
    } else {
        std::uniform_real_distribution<double> d(-10.0, 10.0);
        for (auto& x : v) x = d(rng);
    }
    return v;
}

bool is_constant(const std::vector<double>& v) {
    for (const auto& x : v) {
        if (x != v.front()) return false;
    }
    return true;
}

matrix random_correlation_matrix(std::mt19937& rng, std::size_t p) {
    // correlation matrix of p random vectors, PSD by construction
    std::vector<std::vector<double>> cols;
    for (std::size_t k = 0; k < p; ++k) {
        auto v = random_vector(rng, 40, false);
        cols.push_back(std::move(v));
    }
    matrix cm(p, p);
    for (std::size_t i = 0; i < p; ++i) {
        cm(i, i) = 1.0;
        for (std::size_t j = i + 1; j < p; ++j) {
            const double r = oracle_pearson(cols[i], cols[j]);
            cm(i, j) = r;
            cm(j, i) = r;
        }
    }
    return cm;
}

matrix random_symmetric(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = d(rng);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

} // namespace

TEST_CASE("pearson basics") {
    std::vector<double> v = {1.0, 2.0, 4.0, 7.0, 11.0};
    SUBCASE("self-correlation is 1") {
        CHECK(std::abs(pearson(v, v) - 1.0) <= 1e-12);
    }
    SUBCASE("exact negative linear relation is -1") {
        std::vector<double> w;
        for (double x : v) w.push_back(-x + 3.0);
        CHECK(std::abs(pearson(v, w) + 1.0) <= 1e-12);
    }
    SUBCASE("matches the direct product-moment formula") {
        std::vector<double> x = {1, 2, 3, 4};
        std::vector<double> y = {2, 4, 5, 9};
        CHECK(std::abs(pearson(x, y) - oracle_pearson(x, y)) < 1e-12);
    }
    SUBCASE("error paths") {
        std::vector<double> shorter = {1.0, 2.0};
        std::vector<double> constant = {5.0, 5.0, 5.0, 5.0, 5.0};
        CHECK_THROWS_WITH_AS(pearson(v, shorter), doctest::Contains("length mismatch"), data_error);
        CHECK_THROWS_AS(pearson(shorter, shorter), data_error);
        CHECK_THROWS_WITH_AS(pearson(constant, v), doctest::Contains("constant"), data_error);
        CHECK_THROWS_WITH_AS(pearson(v, constant), doctest::Contains("constant"), data_error);
    }
}

TEST_CASE("pearson is invariant under positive affine transforms") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        auto x = random_vector(rng, 25, false);
        auto y = random_vector(rng, 25, false);
        std::vector<double> x2;
        for (double v : x) x2.push_back(2.5 * v + 17.0);
        CHECK(std::abs(pearson(x, y) - pearson(x2, y)) < 1e-9);
    }
}

TEST_CASE("spearman basics") {
    std::vector<double> v = {3.0, 1.0, 4.0, 1.5, 9.0, 2.6};
    SUBCASE("any strictly increasing transform correlates 1") {
        std::vector<double> w;
        for (double x : v) w.push_back(std::exp(x));
        CHECK(std::abs(spearman(v, w) - 1.0) <= 1e-12);
    }
    SUBCASE("strictly decreasing transform correlates -1") {
        std::vector<double> w;
        for (double x : v) w.push_back(-x * x * x);
        CHECK(std::abs(spearman(v, w) + 1.0) <= 1e-12);
    }
    SUBCASE("ties get average ranks") {
        std::vector<double> x = {1, 2, 2, 3};
        std::vector<double> y = {1, 2, 3, 4};
        auto rx = support::oracle_average_ranks(x);
        auto ry = support::oracle_average_ranks(y);
        CHECK(rx == std::vector<double>{1.0, 2.5, 2.5, 4.0});
        CHECK(std::abs(spearman(x, y) - oracle_pearson(rx, ry)) < 1e-12);
    }
}

TEST_CASE("average_ranks matches the pairwise-count oracle") {
    std::mt19937 rng(31415);
    for (int trial = 0; trial < 50; ++trial) {
        auto v = random_vector(rng, 60, true);
        auto fast = average_ranks(v);
        auto slow = support::oracle_average_ranks(v);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
    }
}

TEST_CASE("correlations match their oracles on random vectors with ties") {
    std::mt19937 rng(161803);
    std::uniform_int_distribution<std::size_t> len(10, 200);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = len(rng);
        auto x = random_vector(rng, n, true);
        auto y = random_vector(rng, n, true);
        if (is_constant(x) || is_constant(y)) continue;
        CHECK(std::abs(pearson(x, y) - oracle_pearson(x, y)) < 1e-12);
        const double rho = spearman(x, y);
        const double rho_oracle =
            oracle_pearson(support::oracle_average_ranks(x), support::oracle_average_ranks(y));
        CHECK(std::abs(rho - rho_oracle) < 1e-12);
        CHECK(rho >= -1.0 - 1e-12);
        CHECK(rho <= 1.0 + 1e-12);
    }
}

TEST_CASE("spearman is invariant under strictly monotone transforms") {
    std::mt19937 rng(271828);
    for (int trial = 0; trial < 30; ++trial) {
        auto x = random_vector(rng, 40, true);
        auto y = random_vector(rng, 40, true);
        if (is_constant(x) || is_constant(y)) continue;
        std::vector<double> x2;
        for (double v : x) x2.push_back(std::exp(0.3 * v)); // strictly increasing
        CHECK(std::abs(spearman(x, y) - spearman(x2, y)) < 1e-12);
    }
}

TEST_CASE("correlate_columns") {
    // synthetic report: five units with hand-placed values
    indicator_report report;
    report.scheme = percentile_scheme::exclusive;
    for (int i = 0; i < 5; ++i) {
        report_row row;
        row.unit_id = "u" + std::to_string(i);
        row.np = 10 + i;
        row.tc = 100 * (i + 1);
        row.cpp = static_cast<double>(row.tc) / static_cast<double>(row.np);
        row.cbi1 = 3.0 * (i + 1); // proportional to tc
        row.cbi2 = std::pow(1.7, i);
        row.cii1 = row.cbi1 + 0.5 * i;
        row.cii2 = row.cbi2 + 0.1;
        row.i3 = 50.0 + 11.0 * i * i;
        report.rows.push_back(row);
    }

    SUBCASE("perfectly proportional columns correlate to 1") {
        auto cm = correlate_columns(report, {"tc", "cbi1"}, correlation_method::pearson);
        CHECK(std::abs(cm.values(0, 1) - 1.0) <= 1e-12);
        CHECK(cm.values(0, 0) == 1.0);
        CHECK(cm.values(1, 1) == 1.0);
    }
    SUBCASE("matrix entries equal pairwise calls") {
        const std::vector<std::string> cols = {"np", "tc", "cbi2", "i3"};
        for (auto method : {correlation_method::pearson, correlation_method::spearman}) {
            auto cm = correlate_columns(report, cols, method);
            for (std::size_t i = 0; i < cols.size(); ++i) {
                for (std::size_t j = 0; j < cols.size(); ++j) {
                    CHECK(cm.values(i, j) == cm.values(j, i));
                    if (i == j) continue;
                    auto x = report.column(cols[i]);
                    auto y = report.column(cols[j]);
                    const double direct = method == correlation_method::pearson
                                              ? pearson(x, y)
                                              : spearman(x, y);
                    CHECK(cm.values(i, j) == direct);
                }
            }
        }
    }
    SUBCASE("missing column is named") {
        CHECK_THROWS_WITH_AS(correlate_columns(report, {"np", "if2010"}, correlation_method::pearson),
                             doctest::Contains("if2010"), data_error);
    }
    SUBCASE("constant column is named") {
        for (auto& row : report.rows) row.cbi2 = 4.0;
        CHECK_THROWS_WITH_AS(correlate_columns(report, {"np", "cbi2"}, correlation_method::pearson),
                             doctest::Contains("cbi2"), data_error);
    }
    SUBCASE("fewer than 3 units is rejected") {
        report.rows.resize(2);
        CHECK_THROWS_AS(correlate_columns(report, {"np", "tc"}, correlation_method::pearson),
                        data_error);
    }
}

TEST_CASE("jacobi_eigen on known matrices") {
    SUBCASE("identity") {
        auto eig = jacobi_eigen(matrix::identity(4));
        for (double v : eig.values) CHECK(v == 1.0);
    }
    SUBCASE("[[2,1],[1,2]] has eigenvalues 3 and 1") {
        matrix m(2, 2);
        m(0, 0) = 2;
        m(0, 1) = 1;
        m(1, 0) = 1;
        m(1, 1) = 2;
        auto eig = jacobi_eigen(m);
        CHECK(std::abs(eig.values[0] - 3.0) <= 1e-9);
        CHECK(std::abs(eig.values[1] - 1.0) <= 1e-9);
    }
    SUBCASE("diagonal matrix returns its diagonal, axis eigenvectors") {
        matrix m(3, 3);
        m(0, 0) = 5.0;
        m(1, 1) = -2.0;
        m(2, 2) = 3.0;
        auto eig = jacobi_eigen(m);
        CHECK(eig.values == std::vector<double>{5.0, 3.0, -2.0});
        // each eigenvector is an axis vector up to sign
        const std::vector<std::size_t> axis = {0, 2, 1};
        for (std::size_t k = 0; k < 3; ++k) {
            for (std::size_t i = 0; i < 3; ++i) {
                const double expected = i == axis[k] ? 1.0 : 0.0;
                CHECK(std::abs(std::abs(eig.vectors(i, k)) - expected) <= 1e-12);
            }
        }
    }
    SUBCASE("asymmetric input is rejected") {
        matrix m(2, 2);
        m(0, 1) = 1.0;
        m(1, 0) = 0.5;
        CHECK_THROWS_WITH_AS(jacobi_eigen(m), doctest::Contains("symmetric"), data_error);
    }
    SUBCASE("oversized input is rejected") {
        CHECK_THROWS_AS(jacobi_eigen(matrix::identity(65)), data_error);
    }
}

TEST_CASE("jacobi_eigen satisfies residual, trace and orthonormality bounds") {
    std::mt19937 rng(112233);
    for (std::size_t n : {2u, 3u, 5u, 8u, 12u, 16u}) {
        for (int trial = 0; trial < 10; ++trial) {
            matrix m = random_symmetric(rng, n);
            auto eig = jacobi_eigen(m);

            double trace = 0.0, eig_sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) trace += m(i, i);
            for (double v : eig.values) eig_sum += v;
            CHECK(std::abs(trace - eig_sum) < 1e-9);

            for (std::size_t k = 0; k < n; ++k) {
                for (std::size_t i = 0; i < n; ++i) {
                    double av = 0.0;
                    for (std::size_t j = 0; j < n; ++j) av += m(i, j) * eig.vectors(j, k);
                    CHECK(std::abs(av - eig.values[k] * eig.vectors(i, k)) < 1e-9);
                }
            }
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = 0; b < n; ++b) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < n; ++i) dot += eig.vectors(i, a) * eig.vectors(i, b);
                    CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-9);
                }
            }
            for (std::size_t k = 1; k < n; ++k) CHECK(eig.values[k - 1] >= eig.values[k]);
        }
    }
}

namespace {

correlation_matrix wrap(const matrix& m) {
    correlation_matrix cm;
    cm.values = m;
    cm.method = correlation_method::pearson;
    for (std::size_t i = 0; i < m.rows(); ++i) cm.labels.push_back("v" + std::to_string(i));
    return cm;
}

double best_grid_criterion(const matrix& normalized_loadings) {
    double best = -1e300;
    for (int i = 0; i < 3600; ++i) {
        const double angle = static_cast<double>(i) / 3600.0 * 2.0 * M_PI;
        matrix r(2, 2);
        r(0, 0) = std::cos(angle);
        r(1, 0) = std::sin(angle);
        r(0, 1) = -std::sin(angle);
        r(1, 1) = std::cos(angle);
        best = std::max(best, varimax_criterion(multiply(normalized_loadings, r)));
    }
    return best;
}

} // namespace

TEST_CASE("two_factor_varimax finds simple structure on a block matrix") {
    matrix m(4, 4);
    const double ones[4][4] = {{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = ones[i][j];
    }
    auto fs = two_factor_varimax(wrap(m));

    for (std::size_t i = 0; i < 4; ++i) {
        const double a = std::abs(fs.rotated(i, 0));
        const double b = std::abs(fs.rotated(i, 1));
        CHECK(std::max(a, b) > 0.99); // loads on exactly one factor
        CHECK(std::min(a, b) < 0.01);
    }
    // grid-search oracle: no planar rotation of these loadings does better
    const double grid_best = best_grid_criterion(kaiser_normalize_rows(fs.unrotated));
    CHECK(varimax_criterion(kaiser_normalize_rows(fs.rotated)) >= grid_best - 1e-9);
}

TEST_CASE("two_factor_varimax leaves perfect simple structure alone") {
    // loadings (1,0)/(0,1) arise from a correlation matrix with two
    // uncorrelated pairs of duplicated variables; start from one directly
    matrix m(4, 4);
    const double values[4][4] = {{1, 0.9, 0, 0}, {0.9, 1, 0, 0}, {0, 0, 1, 0.8}, {0, 0, 0.8, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = values[i][j];
    }
    auto fs = two_factor_varimax(wrap(m));
    // rotation stays within sign/permutation of the identity
    for (std::size_t k = 0; k < 2; ++k) {
        double col_max = 0.0;
        for (std::size_t i = 0; i < 2; ++i) col_max = std::max(col_max, std::abs(fs.rotation(i, k)));
        CHECK(col_max > 0.999);
    }
}

TEST_CASE("two_factor_varimax structural properties on random correlation matrices") {
    std::mt19937 rng(648);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<std::size_t> dim(3, 8);
        matrix cm = random_correlation_matrix(rng, dim(rng));
        factor_solution fs;
        try {
            fs = two_factor_varimax(wrap(cm));
        } catch (const data_error&) {
            continue; // fewer than 2 positive eigenvalues is a legal outcome here
        }

        // rotation orthogonality
        for (std::size_t a = 0; a < 2; ++a) {
            for (std::size_t b = 0; b < 2; ++b) {
                const double dot = fs.rotation(0, a) * fs.rotation(0, b) +
                                   fs.rotation(1, a) * fs.rotation(1, b);
                CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-9);
            }
        }

        // communalities preserved
        for (std::size_t i = 0; i < cm.rows(); ++i) {
            const double before = fs.unrotated(i, 0) * fs.unrotated(i, 0) +
                                  fs.unrotated(i, 1) * fs.unrotated(i, 1);
            const double after =
                fs.rotated(i, 0) * fs.rotated(i, 0) + fs.rotated(i, 1) * fs.rotated(i, 1);
            CHECK(std::abs(before - after) < 1e-9);
        }

        // criterion non-decreasing per iteration, final >= initial
        for (std::size_t i = 1; i < fs.criterion_trace.size(); ++i) {
            CHECK(fs.criterion_trace[i] >= fs.criterion_trace[i - 1] - 1e-12);
        }
        CHECK(varimax_criterion(kaiser_normalize_rows(fs.rotated)) >=
              varimax_criterion(kaiser_normalize_rows(fs.unrotated)) - 1e-12);

        // rotated = unrotated * rotation
        matrix product = multiply(fs.unrotated, fs.rotation);
        for (std::size_t i = 0; i < cm.rows(); ++i) {
            CHECK(std::abs(product(i, 0) - fs.rotated(i, 0)) < 1e-12);
            CHECK(std::abs(product(i, 1) - fs.rotated(i, 1)) < 1e-12);
        }

        // sign convention: largest-magnitude loading per factor is positive
        for (std::size_t k = 0; k < 2; ++k) {
            double best = 0.0;
            for (std::size_t i = 0; i < cm.rows(); ++i) {
                if (std::abs(fs.rotated(i, k)) > std::abs(best)) best = fs.rotated(i, k);
            }
            CHECK(best >= 0.0);
        }

        // determinism
        auto fs2 = two_factor_varimax(wrap(cm));
        CHECK(fs2.rotated.data() == fs.rotated.data());
        CHECK(fs2.rotation.data() == fs.rotation.data());
    }
}

TEST_CASE("two_factor_varimax rejects rank-deficient inputs") {
    // all-ones correlation: one positive eigenvalue only
    matrix m(3, 3, 1.0);
    CHECK_THROWS_WITH_AS(two_factor_varimax(wrap(m)), doctest::Contains("positive eigenvalues"),
                         data_error);
}

TEST_CASE("two_factor_varimax needs at least 3 variables") {
    matrix m(2, 2);
    m(0, 0) = m(1, 1) = 1.0;
    CHECK_THROWS_AS(two_factor_varimax(wrap(m)), data_error);
}
