#pragma once

#include <cstdint>
#include <string>

#include "mixmean/matrix.hpp"
#include "mixmean/subset.hpp"

namespace mixmean {

enum class Verdict { Holds, Violated, EqualityHolds };

const char* verdict_name(Verdict v) noexcept;

// Both sides of the inequality before the verdict is taken.
//   lhs = (prod of arithmetic means)^(1/N), rhs = (sum of geometric means)/N
// where N = C(m,k) * C(n,l).  lhs_log is the log-domain accumulator behind
// lhs; it is meaningful only when lhs_is_zero is false (lhs is exactly 0 as
// soon as one submatrix is entirely zero).
struct SideValues {
    std::uint64_t submatrix_count = 0;
    bool lhs_is_zero = false;
    double lhs_log = 0.0;
    double lhs = 0.0;
    double rhs_sum = 0.0;
    double rhs = 0.0;
};

struct TheoremReport {
    RangeParams params;
    ScalarBackend backend;
    SideValues sides;
    double margin = 0.0;          // lhs - rhs
    double relative_margin = 0.0; // margin / max(lhs, rhs, smallest positive normal)
    Verdict verdict = Verdict::Holds;
    // Exact backend only: certified enclosures of both sides.
    bool certified = false;
    double lhs_lower = 0.0, lhs_upper = 0.0;
    double rhs_lower = 0.0, rhs_upper = 0.0;
};

struct EvalOptions {
    std::uint64_t cap = std::uint64_t(1) << 40; // max submatrix count
    unsigned threads = 1;
};

// Evaluates both sides over all k x l submatrices and classifies the result.
// evaluate_theorem enforces the claimed range (2k > m and 2l > n, throwing
// Error{RangeViolation} otherwise); evaluate_unchecked computes the same
// quantities for any 1 <= k <= m, 1 <= l <= n, where the inequality may fail.
TheoremReport evaluate_theorem(const NonnegMatrix& B, std::size_t k, std::size_t l,
                               const ScalarBackend& backend = {}, const EvalOptions& options = {});
TheoremReport evaluate_unchecked(const NonnegMatrix& B, std::size_t k, std::size_t l,
                                 const ScalarBackend& backend = {}, const EvalOptions& options = {});

// Exact-input forms; these always run the certified rational path.
TheoremReport evaluate_theorem(const RationalMatrix& B, std::size_t k, std::size_t l,
                               const ScalarBackend& backend = {}, const EvalOptions& options = {});
TheoremReport evaluate_unchecked(const RationalMatrix& B, std::size_t k, std::size_t l,
                                 const ScalarBackend& backend = {}, const EvalOptions& options = {});

// The classical witness that the range condition is needed: rows 0..k-1 all
// ones, rows k..m-1 all zeros.  Requires the row range to be degenerate
// (2k <= m), else throws Error{RangeNotDegenerate}.  On this matrix the lhs
// is 0 while the rhs stays positive, so evaluate_unchecked reports Violated.
NonnegMatrix counterexample_matrix(std::size_t m, std::size_t n, std::size_t k, std::size_t l);

enum class EntryDistribution { UniformPositive, UniformWithZeros, LogUniform, ConstantMatrix };

struct ScanOptions {
    std::uint64_t trials = 1000;
    std::size_t min_dim = 2;
    std::size_t max_dim = 5;
    EntryDistribution distribution = EntryDistribution::UniformPositive;
    double zero_fraction = 0.1; // used by UniformWithZeros
    std::uint64_t seed = 0;
    bool out_of_range = true; // also hunt for violations outside the range
    ScalarBackend backend;
};

struct ScanSummary {
    std::uint64_t in_range_trials = 0;
    std::uint64_t holds = 0;
    std::uint64_t equality = 0;
    std::uint64_t violated = 0;
    double min_relative_margin = 0.0;
    std::uint64_t out_of_range_trials = 0;
    std::uint64_t out_of_range_violations = 0;
    double out_of_range_min_margin = 0.0;
};

// Randomized sweep: in-range instances must never report Violated; the
// out-of-range phase (always with zeros injected) looks for the violations
// that the range condition exists to prevent.  Deterministic for a fixed
// seed; trial generation is independent of evaluation order.
ScanSummary random_scan(const ScanOptions& options);

// Deterministic matrix generator behind random_scan, exposed for tests.
NonnegMatrix random_matrix(std::uint64_t seed, std::size_t rows, std::size_t cols,
                           EntryDistribution distribution, double zero_fraction);

} // namespace mixmean
