// Acceptance gate: every release-blocking property, one pass/fail line each.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "mixmean/mixmean.hpp"

using namespace mixmean;

namespace {

bool g_all_pass = true;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %s (%s)\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    g_all_pass = g_all_pass && pass;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<std::pair<std::size_t, std::size_t>> valid_shapes(std::size_t m, std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = m / 2 + 1; k <= m; ++k)
        for (std::size_t l = n / 2 + 1; l <= n; ++l) out.emplace_back(k, l);
    return out;
}

// Criterion 1: the inequality holds on a large seeded in-range corpus.
void criterion_theorem_holds() {
    Timer timer;
    std::mt19937_64 master(0xA11CE);
    std::uint64_t violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    const int trials = 10000;
    for (int trial = 0; trial < trials; ++trial) {
        std::size_t m = 2 + master() % 5;
        std::size_t n = 2 + master() % 5;
        NonnegMatrix B = random_matrix(master(), m, n, EntryDistribution::UniformPositive, 0.0);
        for (auto [k, l] : valid_shapes(m, n)) {
            TheoremReport r = evaluate_theorem(B, k, l);
            if (r.verdict == Verdict::Violated) ++violations;
            min_margin = std::min(min_margin, r.relative_margin);
        }
    }
    double elapsed = timer.seconds();
    bool pass = violations == 0 && min_margin >= -1e-9 && elapsed < 60.0;
    report(1, "theorem holds on 10000 random in-range matrices, all valid shapes", pass,
           "violations " + std::to_string(violations) + ", min relative margin " +
               fmt(min_margin) + ", " + fmt(elapsed) + " s");
}

// Criterion 2: equality exactly for constant matrices, strict otherwise.
void criterion_equality_iff_constant() {
    std::mt19937_64 master(0xE9);
    int equality = 0;
    double worst_eq = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t m = 2 + master() % 5;
        std::size_t n = 2 + master() % 5;
        NonnegMatrix B = random_matrix(master(), m, n, EntryDistribution::ConstantMatrix, 0.0);
        auto shapes = valid_shapes(m, n);
        auto [k, l] = shapes[master() % shapes.size()];
        TheoremReport r = evaluate_theorem(B, k, l);
        if (r.verdict == Verdict::EqualityHolds) ++equality;
        worst_eq = std::max(worst_eq, std::abs(r.relative_margin));
    }

    int strict = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t m = 2 + master() % 5;
        std::size_t n = 2 + master() % 5;
        NonnegMatrix B = random_matrix(master(), m, n, EntryDistribution::UniformPositive, 0.0);
        const auto& e = B.entries();
        double lo = *std::min_element(e.begin(), e.end());
        double hi = *std::max_element(e.begin(), e.end());
        if (hi / lo < 1.001) {
            --trial;
            continue;
        }
        auto shapes = valid_shapes(m, n);
        auto [k, l] = shapes[master() % shapes.size()];
        TheoremReport r = evaluate_theorem(B, k, l);
        if (r.relative_margin > 1e-9) ++strict;
        min_margin = std::min(min_margin, r.relative_margin);
    }

    bool pass = equality == 1000 && worst_eq <= 1e-12 && strict == 1000;
    report(2, "equality on 1000 constant matrices, strict margin on 1000 spread ones", pass,
           std::to_string(equality) + "/1000 equality (worst " + fmt(worst_eq) + "), " +
               std::to_string(strict) + "/1000 strict (min margin " + fmt(min_margin) + ")");
}

// Criterion 3: the decomposition identity, exact and float, on a fixed corpus.
void criterion_lemma_identity() {
    std::mt19937_64 master(0x1E77A);
    bool exact_ok = true;
    double max_float = 0.0, max_log = 0.0;
    for (int instance = 0; instance < 200; ++instance) {
        std::size_t m = 2 + master() % 3;
        std::size_t n = 2 + master() % 3;
        std::vector<double> entries(m * n);
        for (double& v : entries) v = static_cast<double>(1 + master() % 3);
        NonnegMatrix B(m, n, entries);
        RationalMatrix R = to_rational(B);
        for (auto [k, l] : valid_shapes(m, n)) {
            for (const IndexSubset& rows : enumerate_lex(m, k)) {
                for (const IndexSubset& cols : enumerate_lex(n, l)) {
                    SubmatrixSelection base{rows, cols};
                    for (unsigned r : {1u, 2u})
                        if (lemma_identity_exact(R, base, r) != 0) exact_ok = false;
                    for (double r : {1.0, 2.0}) {
                        LemmaCheck c = lemma_identity(B, base, PowerExponent{r});
                        max_float = std::max(max_float, std::abs(c.residual) / c.scale);
                    }
                    LemmaCheck log_c = lemma_identity(B, base, PowerExponent{0.0});
                    max_log = std::max(max_log, std::abs(log_c.residual));
                }
            }
        }
    }
    bool pass = exact_ok && max_float <= 1e-12 && max_log <= 1e-12;
    report(3, "decomposition identity on 200 small integer matrices, all bases", pass,
           std::string("exact residuals ") + (exact_ok ? "all zero" : "NONZERO") +
               ", max float residual " + fmt(max_float) + ", max log residual " + fmt(max_log));
}

// Criterion 4: the counting coefficients are exactly 1/(k*l) everywhere.
void criterion_coefficients() {
    bool all_match = true;
    std::uint64_t tables = 0;
    for (std::size_t m = 2; m <= 5; ++m)
        for (std::size_t n = 2; n <= 5; ++n)
            for (auto [k, l] : valid_shapes(m, n))
                for (const IndexSubset& rows : enumerate_lex(m, k))
                    for (const IndexSubset& cols : enumerate_lex(n, l)) {
                        CoefficientTable t = coefficient_check(m, n, k, l, {rows, cols});
                        all_match = all_match && t.all_match &&
                                    t.expected == Rational(1, static_cast<long>(k * l));
                        ++tables;
                    }
    report(4, "counting coefficients exactly 1/(k*l), all shapes and bases up to 5x5", all_match,
           std::to_string(tables) + " tables checked");
}

// Criterion 5: the degenerate-range witness, exact sides and CLI exit code.
void criterion_counterexample() {
    NonnegMatrix W = counterexample_matrix(4, 3, 2, 2);
    TheoremReport r = evaluate_unchecked(W, 2, 2);
    oracle::OracleReport brute = oracle::brute_theorem(to_rational(W), 2, 2);

    double sixth = 1.0 / 6.0;
    bool sides_ok = r.sides.lhs == 0.0 && r.sides.lhs_is_zero &&
                    std::abs(r.sides.rhs - sixth) <= 1e-15 && r.verdict == Verdict::Violated;
    bool brute_ok = brute.verdict == oracle::OracleVerdict::Less && brute.lhs_exactly_zero &&
                    brute.rhs_lower <= sixth && sixth <= brute.rhs_upper;

    int status = std::system(MIXMEAN_CLI_PATH " counterexample --m 4 --n 3 --k 2 --l 2 > /dev/null");
    int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

    bool pass = sides_ok && brute_ok && exit_code == 1;
    report(5, "witness at (4,3,2,2): lhs exactly 0, rhs 1/6, CLI exit 1", pass,
           "lhs " + fmt(r.sides.lhs) + ", rhs " + fmt(r.sides.rhs) + ", brute " +
               (brute_ok ? "confirms" : "DISAGREES") + ", exit " + std::to_string(exit_code));
}

// Criterion 6: whole-matrix and single-row reductions match their oracles.
void criterion_reductions() {
    std::mt19937_64 master(0x6A);
    double max_whole = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t m = 1 + master() % 5;
        std::size_t n = 1 + master() % 5;
        NonnegMatrix B = random_matrix(master(), m, n, EntryDistribution::LogUniform, 0.0);
        TheoremReport r = evaluate_theorem(B, m, n);
        double sum = 0.0, logs = 0.0;
        for (double v : B.entries()) {
            sum += v;
            logs += std::log(v);
        }
        double cells = static_cast<double>(m * n);
        max_whole = std::max(max_whole, std::abs(r.sides.lhs - sum / cells) / (sum / cells));
        double gm = std::exp(logs / cells);
        max_whole = std::max(max_whole, std::abs(r.sides.rhs - gm) / gm);
    }

    double max_vector = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + master() % 7;
        std::size_t l = n / 2 + 1 + master() % (n - n / 2);
        NonnegMatrix row = random_matrix(master(), 1, n, EntryDistribution::UniformPositive, 0.0);
        TheoremReport r = evaluate_theorem(row, 1, l);
        auto v = oracle::subset_mixed_mean(row.entries(), l);
        max_vector = std::max(max_vector, std::abs(r.sides.lhs - v.lhs) / v.lhs);
        max_vector = std::max(max_vector, std::abs(r.sides.rhs - v.rhs) / v.rhs);
    }

    bool pass = max_whole <= 1e-12 && max_vector <= 1e-12;
    report(6, "whole-matrix and single-row reductions match oracles, 100 trials each", pass,
           "max whole-matrix deviation " + fmt(max_whole) + ", max vector deviation " +
               fmt(max_vector));
}

// Criterion 7: the full derivation chain on random positive instances.
void criterion_proof_trace() {
    std::mt19937_64 master(0x7ACE);
    bool chains = true, endpoints = true;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t m = 2 + master() % 4;
        std::size_t n = 2 + master() % 4;
        NonnegMatrix B = random_matrix(master(), m, n,
                                       trial % 2 == 0 ? EntryDistribution::UniformPositive
                                                      : EntryDistribution::LogUniform,
                                       0.0);
        auto shapes = valid_shapes(m, n);
        auto [k, l] = shapes[master() % shapes.size()];
        ProofTrace trace = proof_trace(B, k, l);
        TheoremReport r = evaluate_theorem(B, k, l);
        chains = chains && trace.chain_holds;
        min_gap = std::min(min_gap, (trace.lhs - trace.product_bound) / trace.lhs);
        min_gap = std::min(min_gap, (trace.product_bound - trace.holder_left) / trace.product_bound);
        min_gap = std::min(min_gap, -std::abs(trace.holder_left - trace.rhs) / trace.rhs);
        endpoints = endpoints && std::abs(trace.lhs - r.sides.lhs) <= 1e-12 * r.sides.lhs &&
                    std::abs(trace.rhs - r.sides.rhs) <= 1e-12 * r.sides.rhs;
    }
    bool pass = chains && endpoints && min_gap >= -1e-12;
    report(7, "derivation chain verified on 200 random positive instances", pass,
           std::string("chains ") + (chains ? "hold" : "BROKEN") + ", endpoints " +
               (endpoints ? "match" : "DIFFER") + ", min link gap " + fmt(min_gap));
}

// Criterion 8: the mixed-mean grid comparison.
void criterion_holder() {
    std::mt19937_64 master(0x401D);
    double worst_eq = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t rows = 1 + master() % 6;
        std::size_t cols = 1 + master() % 8;
        double c = 0.01 + 10.0 * static_cast<double>(master() % 1000) / 1000.0;
        HolderResult h = holder_mixed(NonnegMatrix::constant(rows, cols, c));
        worst_eq = std::max(worst_eq, std::abs(h.left - h.right) / h.right);
    }

    int holds = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t rows = 1 + master() % 6;
        std::size_t cols = 1 + master() % 8;
        NonnegMatrix grid = random_matrix(master(), rows, cols,
                                          trial % 2 == 0 ? EntryDistribution::UniformPositive
                                                         : EntryDistribution::LogUniform,
                                          0.0);
        if (holder_mixed(grid).holds) ++holds;
    }
    bool pass = worst_eq <= 1e-14 && holds == 1000;
    report(8, "mixed-mean grid comparison: equality on constants, holds on 1000 grids", pass,
           "constant deviation " + fmt(worst_eq) + ", " + std::to_string(holds) + "/1000 hold");
}

// Criterion 9: brute-force enclosures arbitrate the float path.
void criterion_oracle_agreement() {
    std::mt19937_64 master(0x0AC1E);
    int verdict_match = 0, enclosed = 0;
    const int trials = 500;
    for (int trial = 0; trial < trials; ++trial) {
        std::size_t m = 2 + master() % 4;
        std::size_t n = 2 + master() % 4;
        std::vector<Rational> entries;
        bool constant = trial % 25 == 0;
        Rational c(static_cast<long>(1 + master() % 100), static_cast<long>(1 + master() % 100));
        c.canonicalize();
        for (std::size_t i = 0; i < m * n; ++i) {
            if (constant) {
                entries.push_back(c);
            } else {
                Rational v(static_cast<long>(1 + master() % 1000),
                           static_cast<long>(1 + master() % 1000));
                v.canonicalize();
                entries.push_back(v);
            }
        }
        RationalMatrix R(m, n, entries);
        auto shapes = valid_shapes(m, n);
        auto [k, l] = shapes[master() % shapes.size()];

        oracle::OracleReport brute = oracle::brute_theorem(R, k, l);
        TheoremReport fast = evaluate_theorem(to_double(R), k, l);

        bool match = (brute.verdict == oracle::OracleVerdict::Less) ==
                         (fast.verdict == Verdict::Violated) &&
                     (brute.verdict == oracle::OracleVerdict::Equal) ==
                         (fast.verdict == Verdict::EqualityHolds);
        if (match) ++verdict_match;

        double slack_l = 1e-9 * std::max(1.0, std::abs(fast.sides.lhs));
        double slack_r = 1e-9 * std::max(1.0, std::abs(fast.sides.rhs));
        if (fast.sides.lhs >= brute.lhs_lower - slack_l &&
            fast.sides.lhs <= brute.lhs_upper + slack_l &&
            fast.sides.rhs >= brute.rhs_lower - slack_r &&
            fast.sides.rhs <= brute.rhs_upper + slack_r)
            ++enclosed;
    }
    bool pass = verdict_match == trials && enclosed == trials;
    report(9, "brute-force oracle agrees with the float path on 500 rational instances", pass,
           std::to_string(verdict_match) + "/500 verdicts match, " + std::to_string(enclosed) +
               "/500 inside widened enclosures");
}

// Criterion 10: incremental enumeration is fast and agrees with recomputation.
void criterion_performance() {
    // 12x12, k = l = 7: C(12,7)^2 = 627264 submatrices through the CLI.
    std::mt19937_64 master(0xF457);
    NonnegMatrix big = random_matrix(master(), 12, 12, EntryDistribution::UniformPositive, 0.0);
    std::string path = "/tmp/mixmean_acceptance_12x12.csv";
    {
        std::ofstream f(path);
        f << serialize_matrix(big, MatrixFormat::Csv);
    }
    Timer timer;
    int status = std::system(
        (std::string(MIXMEAN_CLI_PATH) + " verify --k 7 --l 7 --input " + path + " > /dev/null")
            .c_str());
    double elapsed = timer.seconds();
    int exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::remove(path.c_str());

    // Incremental scan vs naive recomputation, all valid shapes on 6x6.
    double max_dev = 0.0;
    bool zeros_agree = true;
    for (int instance = 0; instance < 10; ++instance) {
        NonnegMatrix B = random_matrix(master(), 6, 6,
                                       instance % 2 == 0 ? EntryDistribution::UniformWithZeros
                                                         : EntryDistribution::LogUniform,
                                       0.15);
        for (auto [k, l] : valid_shapes(6, 6)) {
            std::map<std::uint64_t, SubmatrixStats> seen;
            scan_all_submatrices(B, k, l, std::uint64_t(1) << 30,
                                 [&](std::uint64_t id, const SubmatrixStats& s) { seen[id] = s; });
            std::uint64_t id = 0;
            for (const IndexSubset& rows : enumerate_lex(6, k)) {
                for (const IndexSubset& cols : enumerate_lex(6, l)) {
                    SubmatrixStats want = submatrix_stats(B, {rows, cols});
                    const SubmatrixStats& got = seen.at(id);
                    zeros_agree = zeros_agree && got.zero_count == want.zero_count;
                    double a = want.arithmetic_mean();
                    if (a > 0)
                        max_dev = std::max(max_dev,
                                           std::abs(got.arithmetic_mean() - a) / a);
                    double g = want.geometric_mean();
                    if (g > 0)
                        max_dev = std::max(max_dev, std::abs(got.geometric_mean() - g) / g);
                    ++id;
                }
            }
        }
    }

    bool pass = exit_code == 0 && elapsed < 5.0 && zeros_agree && max_dev <= 1e-12;
    report(10, "12x12 k=l=7 verify under 5 s; incremental matches naive on 6x6", pass,
           "CLI exit " + std::to_string(exit_code) + " in " + fmt(elapsed) +
               " s, max 6x6 deviation " + fmt(max_dev));
}

} // namespace

int main() {
    criterion_theorem_holds();
    criterion_equality_iff_constant();
    criterion_lemma_identity();
    criterion_coefficients();
    criterion_counterexample();
    criterion_reductions();
    criterion_proof_trace();
    criterion_holder();
    criterion_oracle_agreement();
    criterion_performance();
    std::printf("%s\n", g_all_pass ? "ACCEPTANCE: all criteria passed"
                                   : "ACCEPTANCE: FAILURES above");
    return g_all_pass ? 0 : 1;
}
