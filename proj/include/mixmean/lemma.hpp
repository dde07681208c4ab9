#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixmean/matrix.hpp"
#include "mixmean/means.hpp"
#include "mixmean/rational.hpp"
#include "mixmean/subset.hpp"

namespace mixmean {

// The decomposition identity behind the inequality: for any base submatrix X
// and exponent r, the r-th power of its power mean equals the average of the
// r-th powers of the power means of its overlaps with every other submatrix,
//   m_r(X)^r = (1/N) * sum over partners Y of m_r(X n Y)^r,
// where X n Y selects rows(X) n rows(Y) and cols(X) n cols(Y).  For r = 0 the
// identity is multiplicative and is checked in the log domain when the base
// is positive; a base containing a zero makes both sides 0.

// Overlap means of one base/partner pair (diagnostics and tests).
struct IntersectionMeans {
    SubmatrixSelection partner;
    std::size_t overlap_rows = 0;
    std::size_t overlap_cols = 0;
    double mean = 0.0; // m_r of the overlap block
};

std::vector<IntersectionMeans> intersection_means(const NonnegMatrix& B,
                                                  const SubmatrixSelection& base,
                                                  PowerExponent r);

struct LemmaCheck {
    double residual = 0.0; // lhs - rhs of the identity (log domain for r = 0)
    double scale = 0.0;    // magnitude the residual should be compared against
    bool log_form = false; // true when the r = 0 log form was used
};

// Residual of the identity at one base.  Requires 2k > m and 2l > n (the
// overlaps are nonempty exactly then); throws Error{RangeViolation} otherwise.
LemmaCheck lemma_identity(const NonnegMatrix& B, const SubmatrixSelection& base,
                          PowerExponent r, const ScalarBackend& backend = {});

// Exact variant for integer exponents r >= 1; the residual is exactly 0 when
// the identity holds, with no tolerance involved.
Rational lemma_identity_exact(const RationalMatrix& B, const SubmatrixSelection& base,
                              unsigned r);

// The counting argument behind the identity: every entry of the base is hit
// by the same fraction of partner overlaps.  coefficient(p, q) is
//   (1/N) * sum over partners of [entry (p,q) in overlap] / overlap size,
// computed exactly; the identity requires every coefficient to be 1/(k*l).
struct CoefficientTable {
    std::size_t k = 0;
    std::size_t l = 0;
    Rational expected;                  // 1 / (k*l)
    std::vector<Rational> coefficients; // row-major over the base block
    bool all_match = false;

    const Rational& at(std::size_t p, std::size_t q) const { return coefficients[p * l + q]; }
};

CoefficientTable coefficient_check(std::size_t m, std::size_t n, std::size_t k, std::size_t l,
                                   const SubmatrixSelection& base);

// Mixed-mean comparison on a positive grid (the discrete Hoelder step):
//   sum over columns of (prod over rows)^(1/rows)
//     <= (prod over rows of row sums)^(1/rows).
struct HolderResult {
    double left = 0.0;
    double right = 0.0;
    bool holds = false;
};

HolderResult holder_mixed(const NonnegMatrix& grid, double tolerance = 1e-9);

// One base's role in the derivation chain.
struct TraceBaseRecord {
    std::uint64_t id = 0;
    double arithmetic_mean = 0.0;
    double geometric_mean = 0.0;
    double mean_decomposition_residual = 0.0; // additive identity at r = 1
    double log_decomposition_residual = 0.0;  // multiplicative identity at r = 0
    double overlap_sum = 0.0;                 // sum over partners of overlap geometric means
    double min_pairwise_margin = 0.0;         // min over partners of (a - g)/a for overlaps
};

// End-to-end verification of the derivation on one positive instance:
// each base's means decompose over overlaps, each overlap satisfies the
// arithmetic-geometric comparison, the product of overlap sums bounds the
// lhs from below, and the Hoelder step collapses that bound to the rhs.
struct ProofTrace {
    RangeParams params;
    std::uint64_t submatrix_count = 0;
    std::vector<TraceBaseRecord> bases;
    double lhs = 0.0;
    double product_bound = 0.0; // (1/N) * (prod of overlap sums)^(1/N)
    double holder_left = 0.0;   // Hoelder left side over the overlap grid, / N
    double rhs = 0.0;
    double max_decomposition_residual = 0.0;
    double max_log_decomposition_residual = 0.0;
    double min_pairwise_margin = 0.0;
    bool chain_holds = false; // lhs >= product_bound >= holder_left = rhs within tolerance
};

// Requires positive entries (throws Error{NonpositiveEntry}) and the valid
// range; the pair grid has N^2 cells, so N^2 must stay within options-style
// caps handled by the caller (desk scale).
ProofTrace proof_trace(const NonnegMatrix& B, std::size_t k, std::size_t l,
                       const ScalarBackend& backend = {});

} // namespace mixmean
