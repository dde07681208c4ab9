#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mixmean/combinatorics.hpp"
#include "mixmean/inequality.hpp"
#include "mixmean/oracle.hpp"

using namespace mixmean;

namespace {

// Direct two-sided recomputation from definitions (independent of the scan).
std::pair<double, double> naive_sides(const NonnegMatrix& B, std::size_t k, std::size_t l) {
    double N = 0.0;
    double log_product = 0.0;
    bool lhs_zero = false;
    double geo_sum = 0.0;
    for (const IndexSubset& rows : enumerate_lex(B.rows(), k)) {
        for (const IndexSubset& cols : enumerate_lex(B.cols(), l)) {
            double sum = 0.0, logs = 0.0;
            bool zero = false;
            for (std::size_t i : rows.indices())
                for (std::size_t j : cols.indices()) {
                    double v = B.at(i, j);
                    sum += v;
                    if (v == 0.0)
                        zero = true;
                    else
                        logs += std::log(v);
                }
            double cells = static_cast<double>(k * l);
            double a = sum / cells;
            if (a == 0.0)
                lhs_zero = true;
            else
                log_product += std::log(a);
            geo_sum += zero ? 0.0 : std::exp(logs / cells);
            N += 1.0;
        }
    }
    double lhs = lhs_zero ? 0.0 : std::exp(log_product / N);
    return {lhs, geo_sum / N};
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace

TEST_CASE("pinned 2x2 whole-matrix evaluation") {
    NonnegMatrix B(2, 2, {1, 2, 3, 4});
    TheoremReport report = evaluate_theorem(B, 2, 2);
    CHECK(report.sides.submatrix_count == 1);
    CHECK(report.sides.lhs == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(report.sides.rhs == doctest::Approx(std::pow(24.0, 0.25)).epsilon(1e-14));
    CHECK(report.verdict == Verdict::Holds);
    CHECK(report.margin > 0.0);
}

TEST_CASE("constant matrices reach equality under every valid shape") {
    for (double c : {0.001, 1.0, 417.25}) {
        NonnegMatrix B = NonnegMatrix::constant(4, 5, c);
        for (std::size_t k = 3; k <= 4; ++k) {
            for (std::size_t l = 3; l <= 5; ++l) {
                TheoremReport report = evaluate_theorem(B, k, l);
                CHECK(report.verdict == Verdict::EqualityHolds);
                CHECK(rel_close(report.sides.lhs, c, 1e-13));
                CHECK(rel_close(report.sides.rhs, c, 1e-13));
                CHECK(std::abs(report.relative_margin) <= 1e-12);
            }
        }
    }
}

TEST_CASE("range is enforced by evaluate_theorem but not evaluate_unchecked") {
    NonnegMatrix B = NonnegMatrix::constant(4, 4, 2.0);
    CHECK_THROWS_AS(evaluate_theorem(B, 2, 3), Error);
    CHECK_THROWS_AS(evaluate_theorem(B, 3, 2), Error);
    try {
        evaluate_theorem(B, 2, 3);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RangeViolation);
    }
    CHECK(evaluate_unchecked(B, 2, 2).verdict == Verdict::EqualityHolds);
    CHECK_THROWS_AS(evaluate_theorem(B, 5, 4), Error); // shape error
}

TEST_CASE("evaluation agrees with direct recomputation on random instances") {
    std::mt19937_64 master(2024);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t m = 2 + master() % 4;
        std::size_t n = 2 + master() % 4;
        std::size_t k = m / 2 + 1 + master() % (m - m / 2);
        std::size_t l = n / 2 + 1 + master() % (n - n / 2);
        EntryDistribution dist = trial % 3 == 0 ? EntryDistribution::UniformWithZeros
                                                : EntryDistribution::LogUniform;
        NonnegMatrix B = random_matrix(master(), m, n, dist, 0.15);

        TheoremReport report = evaluate_theorem(B, k, l);
        auto [lhs, rhs] = naive_sides(B, k, l);
        CHECK(rel_close(report.sides.lhs, lhs, 1e-12));
        CHECK(rel_close(report.sides.rhs, rhs, 1e-12));
        CHECK(report.verdict != Verdict::Violated);
        CHECK(report.relative_margin >= -1e-9);
    }
}

TEST_CASE("scaling equivariance: evaluate(c*B) = c * evaluate(B)") {
    std::mt19937_64 master(77);
    NonnegMatrix B = random_matrix(master(), 4, 4, EntryDistribution::UniformPositive, 0.0);
    TheoremReport base = evaluate_theorem(B, 3, 3);
    for (double c : {0.003, 7.5, 1200.0}) {
        std::vector<double> scaled(B.entries());
        for (double& v : scaled) v *= c;
        TheoremReport report = evaluate_theorem(NonnegMatrix(4, 4, scaled), 3, 3);
        CHECK(rel_close(report.sides.lhs, c * base.sides.lhs, 1e-12));
        CHECK(rel_close(report.sides.rhs, c * base.sides.rhs, 1e-12));
    }
}

TEST_CASE("transpose symmetry") {
    std::mt19937_64 master(78);
    NonnegMatrix B = random_matrix(master(), 3, 5, EntryDistribution::UniformPositive, 0.0);
    TheoremReport direct = evaluate_theorem(B, 2, 4);
    TheoremReport flipped = evaluate_theorem(B.transposed(), 4, 2);
    CHECK(rel_close(direct.sides.lhs, flipped.sides.lhs, 1e-12));
    CHECK(rel_close(direct.sides.rhs, flipped.sides.rhs, 1e-12));
}

TEST_CASE("k = m, l = n reduces to the classical mean comparison of all entries") {
    std::mt19937_64 master(79);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t m = 1 + master() % 4;
        std::size_t n = 1 + master() % 4;
        NonnegMatrix B = random_matrix(master(), m, n, EntryDistribution::LogUniform, 0.0);
        TheoremReport report = evaluate_theorem(B, m, n);
        CHECK(report.sides.submatrix_count == 1);
        double sum = 0.0, logs = 0.0;
        for (double v : B.entries()) {
            sum += v;
            logs += std::log(v);
        }
        double cells = static_cast<double>(m * n);
        CHECK(rel_close(report.sides.lhs, sum / cells, 1e-12));
        CHECK(rel_close(report.sides.rhs, std::exp(logs / cells), 1e-12));
    }
}

TEST_CASE("single-row matrices agree with the vector-form oracle") {
    std::mt19937_64 master(80);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + master() % 6;
        std::size_t l = n / 2 + 1 + master() % (n - n / 2);
        NonnegMatrix B = random_matrix(master(), 1, n, EntryDistribution::UniformPositive, 0.0);
        TheoremReport report = evaluate_theorem(B, 1, l);
        auto vector_form = oracle::subset_mixed_mean(B.entries(), l);
        CHECK(rel_close(report.sides.lhs, vector_form.lhs, 1e-12));
        CHECK(rel_close(report.sides.rhs, vector_form.rhs, 1e-12));
    }
}

TEST_CASE("counterexample matrix is the expected 0/1 witness and is violated") {
    NonnegMatrix W = counterexample_matrix(4, 3, 2, 2);
    REQUIRE(W.rows() == 4);
    REQUIRE(W.cols() == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(W.at(0, j) == 1.0);
        CHECK(W.at(1, j) == 1.0);
        CHECK(W.at(2, j) == 0.0);
        CHECK(W.at(3, j) == 0.0);
    }

    TheoremReport report = evaluate_unchecked(W, 2, 2);
    CHECK(report.sides.lhs == 0.0);
    CHECK(report.sides.lhs_is_zero);
    // C(4,2)*C(3,2) = 18 submatrices; exactly the 3 with rows {0,1} have
    // geometric mean 1, so the right side is 3/18 = 1/6.
    CHECK(report.sides.rhs == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(report.verdict == Verdict::Violated);

    CHECK_THROWS_AS(counterexample_matrix(4, 3, 3, 2), Error);
    try {
        counterexample_matrix(4, 3, 3, 2);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RangeNotDegenerate);
    }
}

TEST_CASE("equality of sides without a constant matrix stays Holds") {
    // In range (3x3, k=l=2) with an all-zero 2x2 block: both sides are 0,
    // but the matrix is not constant, so this is not the equality case.
    NonnegMatrix B(3, 3, {0, 0, 3, 0, 0, 5, 2, 4, 7});
    TheoremReport report = evaluate_unchecked(B, 2, 2);
    CHECK(report.sides.lhs == 0.0);
    CHECK(report.sides.rhs == 0.0);
    CHECK(report.margin == 0.0);
    CHECK(report.verdict == Verdict::Holds);
}

TEST_CASE("exact backend certifies the same verdicts") {
    ScalarBackend exact{BackendMode::ExactRational};
    NonnegMatrix B(2, 2, {1, 2, 3, 4});
    TheoremReport report = evaluate_theorem(B, 2, 2, exact);
    CHECK(report.certified);
    CHECK(report.verdict == Verdict::Holds);
    CHECK(report.lhs_lower <= 2.5);
    CHECK(2.5 <= report.lhs_upper);
    CHECK(report.rhs_lower <= std::pow(24.0, 0.25));
    CHECK(std::pow(24.0, 0.25) <= report.rhs_upper);

    CHECK(evaluate_theorem(NonnegMatrix::constant(3, 3, 0.1), 2, 2, exact).verdict ==
          Verdict::EqualityHolds);
    CHECK(evaluate_unchecked(counterexample_matrix(4, 3, 2, 2), 2, 2, exact).verdict ==
          Verdict::Violated);
}

TEST_CASE("multithreaded evaluation matches single-threaded") {
    std::mt19937_64 master(81);
    NonnegMatrix B = random_matrix(master(), 7, 6, EntryDistribution::UniformWithZeros, 0.1);
    TheoremReport serial = evaluate_theorem(B, 4, 4);
    for (unsigned threads : {2u, 3u, 8u, 64u}) {
        EvalOptions options;
        options.threads = threads;
        TheoremReport parallel = evaluate_theorem(B, 4, 4, {}, options);
        CHECK(rel_close(parallel.sides.lhs, serial.sides.lhs, 1e-12));
        CHECK(rel_close(parallel.sides.rhs, serial.sides.rhs, 1e-12));
        CHECK(parallel.verdict == serial.verdict);

        // Determinism for a fixed thread count: bitwise identical.
        TheoremReport again = evaluate_theorem(B, 4, 4, {}, options);
        CHECK(again.sides.lhs == parallel.sides.lhs);
        CHECK(again.sides.rhs == parallel.sides.rhs);
    }
}

TEST_CASE("cap exceeded reports instead of running") {
    NonnegMatrix B = NonnegMatrix::constant(8, 8, 1.0);
    EvalOptions options;
    options.cap = 100;
    CHECK_THROWS_AS(evaluate_theorem(B, 5, 5, {}, options), Error);
}

TEST_CASE("random scan finds no violations in range and some out of range") {
    ScanOptions options;
    options.trials = 300;
    options.seed = 12345;
    options.min_dim = 2;
    options.max_dim = 5;
    options.distribution = EntryDistribution::UniformWithZeros;
    options.zero_fraction = 0.1;
    ScanSummary summary = random_scan(options);
    CHECK(summary.in_range_trials == 300);
    CHECK(summary.violated == 0);
    CHECK(summary.min_relative_margin >= -1e-9);
    CHECK(summary.out_of_range_trials == 300);
    CHECK(summary.out_of_range_violations > 0);
    CHECK(summary.out_of_range_min_margin < -1e-9);

    // Same seed, same numbers.
    ScanSummary repeat = random_scan(options);
    CHECK(repeat.min_relative_margin == summary.min_relative_margin);
    CHECK(repeat.out_of_range_violations == summary.out_of_range_violations);
}

TEST_CASE("random scan classifies constant trials as equality") {
    ScanOptions options;
    options.trials = 50;
    options.seed = 7;
    options.distribution = EntryDistribution::ConstantMatrix;
    options.out_of_range = false;
    ScanSummary summary = random_scan(options);
    CHECK(summary.equality == 50);
    CHECK(summary.holds == 0);
    CHECK(summary.violated == 0);
}
