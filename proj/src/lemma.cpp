#include "mixmean/lemma.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "mixmean/combinatorics.hpp"

namespace mixmean {

namespace {

std::vector<std::size_t> intersect(std::span<const std::size_t> a, std::span<const std::size_t> b) {
    std::vector<std::size_t> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            out.push_back(a[i]);
            ++i, ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return out;
}

template <typename Matrix>
RangeParams lemma_params(const Matrix& B, const SubmatrixSelection& base) {
    if (base.rows.universe() != B.rows() || base.cols.universe() != B.cols())
        throw Error(ErrorCode::SelectionOutOfRange, "base universes do not match the matrix");
    RangeParams params{B.rows(), B.cols(), base.rows.size(), base.cols.size()};
    if (!params.valid_range())
        throw Error(ErrorCode::RangeViolation,
                    "the decomposition identity needs 2k > m and 2l > n (otherwise overlaps "
                    "can be empty)");
    std::uint64_t partners = binomial(params.m, params.k) * binomial(params.n, params.l);
    if (partners > (std::uint64_t(1) << 22))
        throw Error(ErrorCode::CapExceeded, "too many partner submatrices for the identity check");
    return params;
}

} // namespace

std::vector<IntersectionMeans> intersection_means(const NonnegMatrix& B,
                                                  const SubmatrixSelection& base,
                                                  PowerExponent r) {
    lemma_params(B, base);
    std::vector<IntersectionMeans> out;
    for (const IndexSubset& rows : enumerate_lex(B.rows(), base.rows.size())) {
        auto ri = intersect(base.rows.indices(), rows.indices());
        for (const IndexSubset& cols : enumerate_lex(B.cols(), base.cols.size())) {
            auto ci = intersect(base.cols.indices(), cols.indices());
            if (ri.empty() || ci.empty())
                throw Error(ErrorCode::EmptyIntersection, "overlap unexpectedly empty");
            std::vector<double> values;
            values.reserve(ri.size() * ci.size());
            for (std::size_t i : ri)
                for (std::size_t j : ci) values.push_back(B.at(i, j));
            out.push_back({SubmatrixSelection{rows, cols}, ri.size(), ci.size(),
                           power_mean(values, r)});
        }
    }
    return out;
}

LemmaCheck lemma_identity(const NonnegMatrix& B, const SubmatrixSelection& base, PowerExponent r,
                          const ScalarBackend&) {
    lemma_params(B, base);

    LemmaCheck check;
    if (r.geometric()) {
        check.log_form = true;
        check.scale = 1.0;
        // Multiplicative form.  A zero in the base makes both sides 0.
        for (std::size_t i : base.rows.indices())
            for (std::size_t j : base.cols.indices())
                if (B.at(i, j) == 0.0) return check;

        auto log_geo = [&](std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
            CompensatedSum lg;
            for (std::size_t i : rows)
                for (std::size_t j : cols) lg.add(std::log(B.at(i, j)));
            return lg.value() / static_cast<double>(rows.size() * cols.size());
        };

        double lhs = log_geo(base.rows.indices(), base.cols.indices());
        CompensatedSum partner_sum;
        std::uint64_t partners = 0;
        for (const IndexSubset& rows : enumerate_lex(B.rows(), base.rows.size())) {
            auto ri = intersect(base.rows.indices(), rows.indices());
            for (const IndexSubset& cols : enumerate_lex(B.cols(), base.cols.size())) {
                auto ci = intersect(base.cols.indices(), cols.indices());
                partner_sum.add(log_geo(ri, ci));
                ++partners;
            }
        }
        check.residual = lhs - partner_sum.value() / static_cast<double>(partners);
        check.scale = std::max(1.0, std::abs(lhs));
        return check;
    }

    // Additive form on r-th powers: m_r(X)^r is a plain average of x^r.
    auto mean_pow = [&](std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
        CompensatedSum s;
        for (std::size_t i : rows)
            for (std::size_t j : cols) {
                double v = B.at(i, j);
                s.add(r.r == 1.0 ? v : std::pow(v, r.r));
            }
        return s.value() / static_cast<double>(rows.size() * cols.size());
    };

    double lhs = mean_pow(base.rows.indices(), base.cols.indices());
    CompensatedSum partner_sum;
    std::uint64_t partners = 0;
    for (const IndexSubset& rows : enumerate_lex(B.rows(), base.rows.size())) {
        auto ri = intersect(base.rows.indices(), rows.indices());
        for (const IndexSubset& cols : enumerate_lex(B.cols(), base.cols.size())) {
            auto ci = intersect(base.cols.indices(), cols.indices());
            partner_sum.add(mean_pow(ri, ci));
            ++partners;
        }
    }
    check.residual = lhs - partner_sum.value() / static_cast<double>(partners);
    check.scale = std::max(lhs, std::numeric_limits<double>::min());
    return check;
}

Rational lemma_identity_exact(const RationalMatrix& B, const SubmatrixSelection& base,
                              unsigned r) {
    lemma_params(B, base);
    if (r == 0)
        throw Error(ErrorCode::InvalidArgument, "the exact form needs an integer exponent r >= 1");

    auto mean_pow = [&](std::span<const std::size_t> rows,
                        std::span<const std::size_t> cols) -> Rational {
        Rational s = 0;
        for (std::size_t i : rows)
            for (std::size_t j : cols) {
                Rational p = 1;
                for (unsigned t = 0; t < r; ++t) p *= B.at(i, j);
                s += p;
            }
        return s / Rational(static_cast<long>(rows.size() * cols.size()));
    };

    Rational lhs = mean_pow(base.rows.indices(), base.cols.indices());
    Rational partner_sum = 0;
    std::uint64_t partners = 0;
    for (const IndexSubset& rows : enumerate_lex(B.rows(), base.rows.size())) {
        auto ri = intersect(base.rows.indices(), rows.indices());
        for (const IndexSubset& cols : enumerate_lex(B.cols(), base.cols.size())) {
            auto ci = intersect(base.cols.indices(), cols.indices());
            partner_sum += mean_pow(ri, ci);
            ++partners;
        }
    }
    return lhs - partner_sum / Rational(static_cast<long>(partners));
}

CoefficientTable coefficient_check(std::size_t m, std::size_t n, std::size_t k, std::size_t l,
                                   const SubmatrixSelection& base) {
    RangeParams params{m, n, k, l};
    params.validate_shape();
    if (!params.valid_range())
        throw Error(ErrorCode::RangeViolation, "the counting argument needs 2k > m and 2l > n");
    if (base.rows.universe() != m || base.cols.universe() != n || base.rows.size() != k ||
        base.cols.size() != l)
        throw Error(ErrorCode::SelectionOutOfRange, "base does not match the given dimensions");

    CoefficientTable table;
    table.k = k;
    table.l = l;
    table.expected = Rational(1, static_cast<long>(k * l));
    table.coefficients.assign(k * l, Rational(0));

    // Position of each base row/column inside the base block.
    std::vector<std::size_t> row_pos(m, SIZE_MAX), col_pos(n, SIZE_MAX);
    for (std::size_t p = 0; p < k; ++p) row_pos[base.rows[p]] = p;
    for (std::size_t q = 0; q < l; ++q) col_pos[base.cols[q]] = q;

    std::uint64_t row_subsets = binomial(m, k);
    std::uint64_t col_subsets = binomial(n, l);
    if (row_subsets > (std::uint64_t(1) << 22) / col_subsets)
        throw Error(ErrorCode::CapExceeded, "too many partner submatrices for the counting check");
    Rational partners(static_cast<long>(row_subsets * col_subsets));
    for (const IndexSubset& rows : enumerate_lex(m, k)) {
        auto ri = intersect(base.rows.indices(), rows.indices());
        for (const IndexSubset& cols : enumerate_lex(n, l)) {
            auto ci = intersect(base.cols.indices(), cols.indices());
            if (ri.empty() || ci.empty())
                throw Error(ErrorCode::EmptyIntersection, "overlap unexpectedly empty");
            Rational weight =
                Rational(1, static_cast<long>(ri.size() * ci.size())) / partners;
            for (std::size_t i : ri)
                for (std::size_t j : ci)
                    table.coefficients[row_pos[i] * l + col_pos[j]] += weight;
        }
    }

    table.all_match = std::all_of(table.coefficients.begin(), table.coefficients.end(),
                                  [&](const Rational& c) { return c == table.expected; });
    return table;
}

HolderResult holder_mixed(const NonnegMatrix& grid, double tolerance) {
    for (double v : grid.entries())
        if (!(v > 0.0))
            throw Error(ErrorCode::NonpositiveEntry, "the mixed-mean comparison needs positive entries");

    double rows = static_cast<double>(grid.rows());
    CompensatedSum left;
    for (std::size_t j = 0; j < grid.cols(); ++j) {
        CompensatedSum col_log;
        for (std::size_t i = 0; i < grid.rows(); ++i) col_log.add(std::log(grid.at(i, j)));
        left.add(std::exp(col_log.value() / rows));
    }
    CompensatedSum right_log;
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        CompensatedSum row_sum;
        for (std::size_t j = 0; j < grid.cols(); ++j) row_sum.add(grid.at(i, j));
        right_log.add(std::log(row_sum.value()));
    }

    HolderResult result;
    result.left = left.value();
    result.right = std::exp(right_log.value() / rows);
    result.holds = result.left <= result.right + tolerance * result.right;
    return result;
}

ProofTrace proof_trace(const NonnegMatrix& B, std::size_t k, std::size_t l,
                       const ScalarBackend& backend) {
    RangeParams params{B.rows(), B.cols(), k, l};
    params.validate_shape();
    if (!params.valid_range())
        throw Error(ErrorCode::RangeViolation, "the derivation needs 2k > m and 2l > n");
    for (double v : B.entries())
        if (!(v > 0.0))
            throw Error(ErrorCode::NonpositiveEntry, "the derivation trace needs positive entries");

    std::uint64_t count = binomial(params.m, params.k) * binomial(params.n, params.l);
    if (count > 4096)
        throw Error(ErrorCode::CapExceeded,
                    "the trace is quadratic in the submatrix count; " + std::to_string(count) +
                        " bases is too many");
    std::size_t N = static_cast<std::size_t>(count);

    auto row_sets = enumerate_lex(params.m, params.k);
    auto col_sets = enumerate_lex(params.n, params.l);

    struct Block {
        std::span<const std::size_t> rows;
        std::span<const std::size_t> cols;
    };
    std::vector<Block> blocks;
    blocks.reserve(N);
    for (const IndexSubset& rows : row_sets)
        for (const IndexSubset& cols : col_sets)
            blocks.push_back({rows.indices(), cols.indices()});

    auto block_means = [&](std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
        CompensatedSum sum, logs;
        for (std::size_t i : rows)
            for (std::size_t j : cols) {
                sum.add(B.at(i, j));
                logs.add(std::log(B.at(i, j)));
            }
        double cells = static_cast<double>(rows.size() * cols.size());
        return std::pair{sum.value() / cells, std::exp(logs.value() / cells)};
    };

    // Pairwise overlap means; the grid is symmetric because intersection is.
    std::vector<double> overlap_a(N * N), overlap_g(N * N);
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
            auto ri = intersect(blocks[i].rows, blocks[j].rows);
            auto ci = intersect(blocks[i].cols, blocks[j].cols);
            if (ri.empty() || ci.empty())
                throw Error(ErrorCode::EmptyIntersection, "overlap unexpectedly empty");
            auto [a, g] = block_means(ri, ci);
            overlap_a[i * N + j] = overlap_a[j * N + i] = a;
            overlap_g[i * N + j] = overlap_g[j * N + i] = g;
        }
    }

    ProofTrace trace;
    trace.params = params;
    trace.submatrix_count = count;
    trace.bases.reserve(N);
    trace.min_pairwise_margin = std::numeric_limits<double>::infinity();

    double dN = static_cast<double>(N);
    CompensatedSum lhs_log, rhs_sum, product_bound_log;
    for (std::size_t i = 0; i < N; ++i) {
        auto [a, g] = block_means(blocks[i].rows, blocks[i].cols);
        TraceBaseRecord record;
        record.id = static_cast<std::uint64_t>(i);
        record.arithmetic_mean = a;
        record.geometric_mean = g;

        CompensatedSum a_sum, g_sum, g_logs;
        double min_margin = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < N; ++j) {
            double oa = overlap_a[i * N + j];
            double og = overlap_g[i * N + j];
            a_sum.add(oa);
            g_sum.add(og);
            g_logs.add(std::log(og));
            min_margin = std::min(min_margin, (oa - og) / oa);
        }
        record.mean_decomposition_residual = a - a_sum.value() / dN;
        record.log_decomposition_residual = std::log(g) - g_logs.value() / dN;
        record.overlap_sum = g_sum.value();
        record.min_pairwise_margin = min_margin;

        lhs_log.add(std::log(a));
        rhs_sum.add(g);
        product_bound_log.add(std::log(record.overlap_sum));
        trace.max_decomposition_residual =
            std::max(trace.max_decomposition_residual,
                     std::abs(record.mean_decomposition_residual) / std::max(a, DBL_MIN));
        trace.max_log_decomposition_residual = std::max(
            trace.max_log_decomposition_residual, std::abs(record.log_decomposition_residual));
        trace.min_pairwise_margin = std::min(trace.min_pairwise_margin, min_margin);
        trace.bases.push_back(record);
    }

    // Hoelder left side on the overlap grid: one column per partner.
    CompensatedSum holder_sum;
    for (std::size_t j = 0; j < N; ++j) {
        CompensatedSum col_log;
        for (std::size_t i = 0; i < N; ++i) col_log.add(std::log(overlap_g[i * N + j]));
        holder_sum.add(std::exp(col_log.value() / dN));
    }

    trace.lhs = std::exp(lhs_log.value() / dN);
    trace.product_bound = std::exp(product_bound_log.value() / dN) / dN;
    trace.holder_left = holder_sum.value() / dN;
    trace.rhs = rhs_sum.value() / dN;

    double tol = backend.tolerance;
    bool link1 = trace.lhs >= trace.product_bound * (1.0 - tol);
    bool link2 = trace.product_bound >= trace.holder_left * (1.0 - tol);
    bool link3 = std::abs(trace.holder_left - trace.rhs) <= tol * std::max(trace.rhs, DBL_MIN);
    bool identities = trace.max_decomposition_residual <= tol &&
                      trace.max_log_decomposition_residual <= tol &&
                      trace.min_pairwise_margin >= -tol;
    trace.chain_holds = link1 && link2 && link3 && identities;
    return trace;
}

} // namespace mixmean
