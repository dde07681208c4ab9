#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mixmean/matrix.hpp"
#include "mixmean/rational.hpp"
#include "mixmean/subset.hpp"

// Independent slow-path checkers.  Everything here enumerates submatrices
// directly from definitions (no incremental updates, no shared scan code) and
// certifies comparisons with exact rationals plus outward-rounded interval
// enclosures, so it can arbitrate the fast path's answers.
namespace mixmean::oracle {

// Hard scale cap for brute-force enumeration.
inline constexpr std::size_t kMaxBruteDim = 8;

// Decided comparison of the two sides.  Equal is only reported when it is
// certified structurally (constant matrix, or both sides exactly zero);
// otherwise the enclosures are refined until they separate.
enum class OracleVerdict { GreaterEqual, Equal, Less };

struct OracleReport {
    OracleVerdict verdict = OracleVerdict::GreaterEqual;
    // Outward-rounded bounds: the true side values lie inside [lower, upper].
    double lhs_lower = 0.0, lhs_upper = 0.0;
    double rhs_lower = 0.0, rhs_upper = 0.0;
    bool lhs_exactly_zero = false;
    bool rhs_exactly_zero = false;
    int precision_bits = 0; // precision at which the verdict was decided
    std::uint64_t submatrix_count = 0;
};

struct BruteOptions {
    int start_precision_bits = 128;
    int max_precision_bits = 16384;
};

// Both sides of the inequality from exact products and sums of k*l-th roots,
// valid for any 1 <= k <= m, 1 <= l <= n within the scale cap.  Throws
// Error{PrecisionExhausted} if the enclosures never separate (which would
// mean a nonconstant instance where the sides coincide as reals).
OracleReport brute_theorem(const RationalMatrix& B, std::size_t k, std::size_t l,
                           const BruteOptions& options = {});

// Vector form of the inequality: for x_1..x_n > 0 and 2k > n,
//   (prod over k-subsets of their arithmetic means)^(1/C(n,k))
//     >= (1/C(n,k)) * sum over k-subsets of their geometric means.
// Enumerated recursively, independent of the matrix scan.
struct SubsetMixedMeanResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

SubsetMixedMeanResult subset_mixed_mean(std::span<const double> x, std::size_t k,
                                        double tolerance = 1e-9);

// Brute-force checks of the decomposition identity, from definitions.
// Exact form for integer r >= 1: returns lhs - rhs as a rational.
Rational brute_lemma_exact(const RationalMatrix& B, const SubmatrixSelection& base, unsigned r);

// Enclosure form for real r >= 0 (r = 0 compares geometric means in the log
// domain): returns certified bounds on lhs - rhs.
struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

Interval brute_lemma(const RationalMatrix& B, const SubmatrixSelection& base, double r,
                     int precision_bits = 256);

} // namespace mixmean::oracle
