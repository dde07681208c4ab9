#include "mixmean/inequality.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "mixmean/combinatorics.hpp"
#include "mixmean/means.hpp"
#include "mixmean/oracle.hpp"

namespace mixmean {

const char* verdict_name(Verdict v) noexcept {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::EqualityHolds: return "equality";
    }
    return "unknown";
}

namespace {

void check_range(const RangeParams& params) {
    if (!params.valid_range())
        throw Error(ErrorCode::RangeViolation,
                    "the inequality is only claimed for 2k > m and 2l > n (got m=" +
                        std::to_string(params.m) + " k=" + std::to_string(params.k) +
                        ", n=" + std::to_string(params.n) + " l=" + std::to_string(params.l) + ")");
}

std::uint64_t checked_submatrix_count(const RangeParams& params, std::uint64_t cap) {
    std::uint64_t row_subsets = binomial(params.m, params.k);
    std::uint64_t col_subsets = binomial(params.n, params.l);
    if (row_subsets > cap / col_subsets)
        throw Error(ErrorCode::CapExceeded, "submatrix count exceeds cap " + std::to_string(cap));
    return row_subsets * col_subsets;
}

// Per-thread (or whole-run) accumulators for the two sides.
struct Accumulator {
    CompensatedSum log_a;
    CompensatedSum g;
    bool lhs_zero = false;

    void take(const SubmatrixStats& stats) {
        double a = stats.arithmetic_mean();
        if (a == 0.0)
            lhs_zero = true;
        else
            log_a.add(std::log(a));
        g.add(stats.geometric_mean());
    }
};

// Column revolving-door walk for the profile's current row set.
void accumulate_columns(const RowSetColumnProfile& profile, std::size_t n, std::size_t l,
                        std::size_t k, Accumulator& acc) {
    RevolvingDoorCursor cols(n, l);
    SubmatrixStats running;
    running.entry_count = k * l;
    CompensatedSum sum;
    CompensatedSum logs;
    for (std::size_t j : cols.current()) {
        sum.add(profile.col_sum(j));
        logs.add(profile.col_log_sum(j));
        running.zero_count += profile.col_zero_count(j);
    }
    while (true) {
        running.sum = sum.value();
        running.log_sum = logs.value();
        acc.take(running);

        auto step = cols.advance();
        if (!step) break;
        sum.add(-profile.col_sum(step->removed));
        logs.add(-profile.col_log_sum(step->removed));
        running.zero_count -= profile.col_zero_count(step->removed);
        sum.add(profile.col_sum(step->inserted));
        logs.add(profile.col_log_sum(step->inserted));
        running.zero_count += profile.col_zero_count(step->inserted);
    }
}

// Row subsets in [first_rank, last_rank) in lex order, stepping the profile
// by the (small) symmetric difference between consecutive subsets.
void accumulate_row_range(const NonnegMatrix& B, const RangeParams& params,
                          std::uint64_t first_rank, std::uint64_t last_rank, Accumulator& acc) {
    SubsetCursor rows = SubsetCursor::at_rank(params.m, params.k, first_rank);
    RowSetColumnProfile profile(B, rows.current());
    std::vector<std::size_t> previous(rows.current());
    for (std::uint64_t rank = first_rank; rank < last_rank; ++rank) {
        accumulate_columns(profile, params.n, params.l, params.k, acc);
        if (rank + 1 == last_rank) break;
        rows.advance();
        const std::vector<std::size_t>& next = rows.current();
        std::size_t i = 0, j = 0;
        while (i < previous.size() || j < next.size()) {
            if (i < previous.size() && j < next.size() && previous[i] == next[j]) {
                ++i, ++j;
            } else if (j == next.size() ||
                       (i < previous.size() && previous[i] < next[j])) {
                profile.remove_row(previous[i++]);
            } else {
                profile.add_row(next[j++]);
            }
        }
        previous = next;
    }
}

TheoremReport finalize(const RangeParams& params, const ScalarBackend& backend,
                       std::uint64_t count, const Accumulator& acc, bool constant) {
    TheoremReport report;
    report.params = params;
    report.backend = backend;
    report.sides.submatrix_count = count;
    double N = static_cast<double>(count);
    report.sides.lhs_is_zero = acc.lhs_zero;
    if (acc.lhs_zero) {
        report.sides.lhs_log = -std::numeric_limits<double>::infinity();
        report.sides.lhs = 0.0;
    } else {
        report.sides.lhs_log = acc.log_a.value() / N;
        report.sides.lhs = std::exp(report.sides.lhs_log);
    }
    report.sides.rhs_sum = acc.g.value();
    report.sides.rhs = report.sides.rhs_sum / N;

    report.margin = report.sides.lhs - report.sides.rhs;
    report.relative_margin =
        report.margin / std::max({report.sides.lhs, report.sides.rhs, DBL_MIN});
    if (std::abs(report.relative_margin) <= backend.equality_tolerance && constant)
        report.verdict = Verdict::EqualityHolds;
    else if (report.relative_margin < -backend.tolerance)
        report.verdict = Verdict::Violated;
    else
        report.verdict = Verdict::Holds;
    return report;
}

TheoremReport evaluate_float(const NonnegMatrix& B, const RangeParams& params,
                             const ScalarBackend& backend, const EvalOptions& options) {
    std::uint64_t count = checked_submatrix_count(params, options.cap);
    std::uint64_t row_subsets = binomial(params.m, params.k);
    unsigned threads = options.threads;
    if (threads > row_subsets) threads = static_cast<unsigned>(row_subsets);

    Accumulator total;
    if (threads <= 1) {
        scan_all_submatrices(B, params.k, params.l, options.cap,
                             [&](std::uint64_t, const SubmatrixStats& stats) { total.take(stats); });
    } else {
        std::vector<Accumulator> partials(threads);
        std::vector<std::exception_ptr> failures(threads);
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            std::uint64_t first = row_subsets * t / threads;
            std::uint64_t last = row_subsets * (t + 1) / threads;
            pool.emplace_back([&, t, first, last] {
                try {
                    accumulate_row_range(B, params, first, last, partials[t]);
                } catch (...) {
                    failures[t] = std::current_exception();
                }
            });
        }
        for (std::thread& th : pool) th.join();
        for (std::exception_ptr& e : failures)
            if (e) std::rethrow_exception(e);
        // Merge in thread order so results are deterministic per thread count.
        for (const Accumulator& partial : partials) {
            total.log_a.merge(partial.log_a);
            total.g.merge(partial.g);
            total.lhs_zero = total.lhs_zero || partial.lhs_zero;
        }
    }
    return finalize(params, backend, count, total, is_constant(B, backend));
}

TheoremReport evaluate_exact(const RationalMatrix& B, const RangeParams& params,
                             const ScalarBackend& backend, const EvalOptions& options) {
    std::uint64_t count = checked_submatrix_count(params, options.cap);
    oracle::OracleReport certified = oracle::brute_theorem(B, params.k, params.l);

    TheoremReport report;
    report.params = params;
    report.backend = backend;
    report.sides.submatrix_count = count;
    report.certified = true;
    report.lhs_lower = certified.lhs_lower;
    report.lhs_upper = certified.lhs_upper;
    report.rhs_lower = certified.rhs_lower;
    report.rhs_upper = certified.rhs_upper;
    report.sides.lhs_is_zero = certified.lhs_exactly_zero;
    report.sides.lhs = 0.5 * (certified.lhs_lower + certified.lhs_upper);
    report.sides.lhs_log = report.sides.lhs > 0.0 ? std::log(report.sides.lhs)
                                                  : -std::numeric_limits<double>::infinity();
    report.sides.rhs = 0.5 * (certified.rhs_lower + certified.rhs_upper);
    report.sides.rhs_sum = report.sides.rhs * static_cast<double>(count);
    report.margin = report.sides.lhs - report.sides.rhs;
    report.relative_margin =
        report.margin / std::max({report.sides.lhs, report.sides.rhs, DBL_MIN});

    switch (certified.verdict) {
        case oracle::OracleVerdict::Equal:
            report.verdict = is_constant(B) ? Verdict::EqualityHolds : Verdict::Holds;
            break;
        case oracle::OracleVerdict::GreaterEqual:
            report.verdict = Verdict::Holds;
            break;
        case oracle::OracleVerdict::Less:
            report.verdict = Verdict::Violated;
            break;
    }
    return report;
}

} // namespace

TheoremReport evaluate_unchecked(const NonnegMatrix& B, std::size_t k, std::size_t l,
                                 const ScalarBackend& backend, const EvalOptions& options) {
    RangeParams params{B.rows(), B.cols(), k, l};
    params.validate_shape();
    if (backend.mode == BackendMode::ExactRational)
        return evaluate_exact(to_rational(B), params, backend, options);
    return evaluate_float(B, params, backend, options);
}

TheoremReport evaluate_theorem(const NonnegMatrix& B, std::size_t k, std::size_t l,
                               const ScalarBackend& backend, const EvalOptions& options) {
    RangeParams params{B.rows(), B.cols(), k, l};
    params.validate_shape();
    check_range(params);
    return evaluate_unchecked(B, k, l, backend, options);
}

TheoremReport evaluate_unchecked(const RationalMatrix& B, std::size_t k, std::size_t l,
                                 const ScalarBackend& backend, const EvalOptions& options) {
    RangeParams params{B.rows(), B.cols(), k, l};
    params.validate_shape();
    ScalarBackend exact = backend;
    exact.mode = BackendMode::ExactRational;
    return evaluate_exact(B, params, exact, options);
}

TheoremReport evaluate_theorem(const RationalMatrix& B, std::size_t k, std::size_t l,
                               const ScalarBackend& backend, const EvalOptions& options) {
    RangeParams params{B.rows(), B.cols(), k, l};
    params.validate_shape();
    check_range(params);
    return evaluate_unchecked(B, k, l, backend, options);
}

NonnegMatrix counterexample_matrix(std::size_t m, std::size_t n, std::size_t k, std::size_t l) {
    RangeParams params{m, n, k, l};
    params.validate_shape();
    if (2 * k > m)
        throw Error(ErrorCode::RangeNotDegenerate,
                    "the witness needs a degenerate row range (2k <= m)");
    std::vector<double> entries(m * n, 0.0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j)
            entries[i * n + j] = 1.0;
    return NonnegMatrix(m, n, std::move(entries));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Uniform in (0, 1]: 53 random bits, never zero, portable across platforms.
double unit_positive(std::mt19937_64& g) {
    return static_cast<double>((g() >> 11) + 1) * 0x1p-53;
}

// Uniform in [0, 1).
double unit_half_open(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1p-53;
}

double log_uniform(std::mt19937_64& g) {
    constexpr double lo = -3.0, hi = 3.0; // decades
    return std::pow(10.0, lo + unit_half_open(g) * (hi - lo));
}

// Uniform integer in [lo, hi]; the tiny modulo bias is irrelevant here and
// keeps the draw sequence portable.
std::size_t uniform_index(std::mt19937_64& g, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(g() % (hi - lo + 1));
}

} // namespace

NonnegMatrix random_matrix(std::uint64_t seed, std::size_t rows, std::size_t cols,
                           EntryDistribution distribution, double zero_fraction) {
    std::mt19937_64 g(seed);
    std::vector<double> entries(rows * cols);
    if (distribution == EntryDistribution::ConstantMatrix) {
        double c = log_uniform(g);
        std::fill(entries.begin(), entries.end(), c);
    } else {
        for (double& e : entries) {
            switch (distribution) {
                case EntryDistribution::UniformPositive:
                    e = unit_positive(g);
                    break;
                case EntryDistribution::UniformWithZeros:
                    e = unit_half_open(g) < zero_fraction ? 0.0 : unit_positive(g);
                    break;
                case EntryDistribution::LogUniform:
                    e = log_uniform(g);
                    break;
                case EntryDistribution::ConstantMatrix:
                    break;
            }
        }
    }
    return NonnegMatrix(rows, cols, std::move(entries));
}

ScanSummary random_scan(const ScanOptions& options) {
    if (options.min_dim < 1 || options.max_dim < options.min_dim || options.max_dim > 16)
        throw Error(ErrorCode::InvalidArgument, "scan dimensions must satisfy 1 <= min <= max <= 16");
    if (!(options.zero_fraction >= 0.0 && options.zero_fraction <= 1.0))
        throw Error(ErrorCode::InvalidArgument, "zero fraction must lie in [0, 1]");

    ScanSummary summary;
    summary.min_relative_margin = std::numeric_limits<double>::infinity();
    summary.out_of_range_min_margin = std::numeric_limits<double>::infinity();

    for (std::uint64_t trial = 0; trial < options.trials; ++trial) {
        std::mt19937_64 g(splitmix64(options.seed ^ splitmix64(trial + 1)));
        std::size_t m = uniform_index(g, options.min_dim, options.max_dim);
        std::size_t n = uniform_index(g, options.min_dim, options.max_dim);
        std::size_t k = uniform_index(g, m / 2 + 1, m);
        std::size_t l = uniform_index(g, n / 2 + 1, n);
        NonnegMatrix B =
            random_matrix(g(), m, n, options.distribution, options.zero_fraction);

        TheoremReport report = evaluate_theorem(B, k, l, options.backend);
        ++summary.in_range_trials;
        switch (report.verdict) {
            case Verdict::Holds: ++summary.holds; break;
            case Verdict::EqualityHolds: ++summary.equality; break;
            case Verdict::Violated: ++summary.violated; break;
        }
        summary.min_relative_margin =
            std::min(summary.min_relative_margin, report.relative_margin);
    }

    if (options.out_of_range && options.max_dim >= 2) {
        double zero_fraction = options.distribution == EntryDistribution::UniformWithZeros
                                   ? options.zero_fraction
                                   : 0.25;
        for (std::uint64_t trial = 0; trial < options.trials; ++trial) {
            std::mt19937_64 g(splitmix64(~options.seed ^ splitmix64(trial + 1)));
            std::size_t lo = options.min_dim < 2 ? 2 : options.min_dim;
            std::size_t m = uniform_index(g, lo, options.max_dim);
            std::size_t n = uniform_index(g, options.min_dim, options.max_dim);
            std::size_t k = uniform_index(g, 1, m / 2); // degenerate row range
            std::size_t l = uniform_index(g, 1, n);
            NonnegMatrix B =
                random_matrix(g(), m, n, EntryDistribution::UniformWithZeros, zero_fraction);

            TheoremReport report = evaluate_unchecked(B, k, l, options.backend);
            ++summary.out_of_range_trials;
            if (report.verdict == Verdict::Violated) ++summary.out_of_range_violations;
            summary.out_of_range_min_margin =
                std::min(summary.out_of_range_min_margin, report.relative_margin);
        }
    }

    if (summary.in_range_trials == 0) summary.min_relative_margin = 0.0;
    if (summary.out_of_range_trials == 0) summary.out_of_range_min_margin = 0.0;
    return summary;
}

} // namespace mixmean
