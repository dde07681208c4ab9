#include "mixmean/oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mixmean/enclosure.hpp"
#include "mixmean/means.hpp"

namespace mixmean::oracle {

namespace {

void check_brute_scale(std::size_t m, std::size_t n) {
    if (m > kMaxBruteDim || n > kMaxBruteDim)
        throw Error(ErrorCode::CapExceeded,
                    "brute-force enumeration is capped at " + std::to_string(kMaxBruteDim) + "x" +
                        std::to_string(kMaxBruteDim));
}

// All k-subsets of {0..n-1}, by plain recursion; deliberately shares nothing
// with the cursor-based enumerators it arbitrates.
std::vector<std::vector<std::size_t>> all_subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t next) -> void {
        if (pick.size() == k) {
            out.push_back(pick);
            return;
        }
        if (next >= n) return;
        pick.push_back(next);
        self(self, next + 1);
        pick.pop_back();
        if (n - next - 1 >= k - pick.size()) self(self, next + 1);
    };
    rec(rec, 0);
    return out;
}

Rational block_sum(const RationalMatrix& B, const std::vector<std::size_t>& rows,
                   const std::vector<std::size_t>& cols) {
    Rational s = 0;
    for (std::size_t i : rows)
        for (std::size_t j : cols) s += B.at(i, j);
    return s;
}

Rational block_product(const RationalMatrix& B, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& cols) {
    Rational p = 1;
    for (std::size_t i : rows)
        for (std::size_t j : cols) p *= B.at(i, j);
    return p;
}

} // namespace

OracleReport brute_theorem(const RationalMatrix& B, std::size_t k, std::size_t l,
                           const BruteOptions& options) {
    check_brute_scale(B.rows(), B.cols());
    RangeParams params{B.rows(), B.cols(), k, l};
    params.validate_shape();

    auto row_sets = all_subsets(params.m, k);
    auto col_sets = all_subsets(params.n, l);
    std::uint64_t count = static_cast<std::uint64_t>(row_sets.size()) * col_sets.size();
    unsigned long cell = static_cast<unsigned long>(k * l);

    // Exact ingredients: the product of arithmetic means and, per submatrix,
    // the radicand of the geometric mean.
    Rational mean_product = 1;
    std::vector<Rational> radicands;
    radicands.reserve(count);
    for (const auto& rows : row_sets) {
        for (const auto& cols : col_sets) {
            Rational s = block_sum(B, rows, cols);
            mean_product *= s / Rational(static_cast<long>(cell));
            radicands.push_back(block_product(B, rows, cols));
        }
    }

    OracleReport report;
    report.submatrix_count = count;
    report.lhs_exactly_zero = mean_product == 0;
    bool all_radicands_zero = true;
    for (const Rational& r : radicands)
        if (r != 0) {
            all_radicands_zero = false;
            break;
        }
    report.rhs_exactly_zero = all_radicands_zero;

    bool constant = is_constant(B);

    for (int precision = options.start_precision_bits; precision <= options.max_precision_bits;
         precision *= 2) {
        Enclosure lhs = report.lhs_exactly_zero
                            ? Enclosure(precision)
                            : Enclosure::nth_root(mean_product,
                                                  static_cast<unsigned long>(count), precision);
        Enclosure rhs(precision);
        for (const Rational& r : radicands) {
            if (r == 0) continue;
            rhs.add(Enclosure::nth_root(r, cell, precision));
        }
        rhs.div(static_cast<unsigned long>(count));

        report.lhs_lower = lhs.lower();
        report.lhs_upper = lhs.upper();
        report.rhs_lower = rhs.lower();
        report.rhs_upper = rhs.upper();
        report.precision_bits = precision;

        // Structurally certified equalities need no separation.
        if (constant || (report.lhs_exactly_zero && report.rhs_exactly_zero)) {
            report.verdict = OracleVerdict::Equal;
            return report;
        }
        if (lhs.strictly_above(rhs)) {
            report.verdict = OracleVerdict::GreaterEqual;
            return report;
        }
        if (lhs.strictly_below(rhs)) {
            report.verdict = OracleVerdict::Less;
            return report;
        }
    }
    throw Error(ErrorCode::PrecisionExhausted,
                "side enclosures never separated; the sides may be equal without the matrix "
                "being constant");
}

SubsetMixedMeanResult subset_mixed_mean(std::span<const double> x, std::size_t k,
                                        double tolerance) {
    std::size_t n = x.size();
    if (n == 0)
        throw Error(ErrorCode::EmptyInput, "empty vector");
    if (k == 0 || k > n)
        throw Error(ErrorCode::SelectionOutOfRange, "subset size must satisfy 1 <= k <= n");
    if (2 * k <= n)
        throw Error(ErrorCode::RangeViolation, "the vector inequality needs 2k > n");
    for (double v : x)
        if (!(v > 0.0))
            throw Error(ErrorCode::NonpositiveEntry, "vector entries must be positive");

    double count = 0;
    double log_mean_sum = 0.0;
    double geo_sum = 0.0;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, std::size_t next) -> void {
        if (pick.size() == k) {
            double s = 0.0, lg = 0.0;
            for (std::size_t i : pick) {
                s += x[i];
                lg += std::log(x[i]);
            }
            log_mean_sum += std::log(s / static_cast<double>(k));
            geo_sum += std::exp(lg / static_cast<double>(k));
            count += 1;
            return;
        }
        if (next >= n) return;
        pick.push_back(next);
        self(self, next + 1);
        pick.pop_back();
        if (n - next - 1 >= k - pick.size()) self(self, next + 1);
    };
    rec(rec, 0);

    SubsetMixedMeanResult result;
    result.lhs = std::exp(log_mean_sum / count);
    result.rhs = geo_sum / count;
    result.holds = result.lhs - result.rhs >= -tolerance * result.lhs;
    return result;
}

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

void check_lemma_setup(const RationalMatrix& B, const SubmatrixSelection& base) {
    check_brute_scale(B.rows(), B.cols());
    if (base.rows.universe() != B.rows() || base.cols.universe() != B.cols())
        throw Error(ErrorCode::SelectionOutOfRange, "base universes do not match the matrix");
    RangeParams params{B.rows(), B.cols(), base.rows.size(), base.cols.size()};
    if (!params.valid_range())
        throw Error(ErrorCode::RangeViolation,
                    "the decomposition identity needs 2k > m and 2l > n");
}

} // namespace

Rational brute_lemma_exact(const RationalMatrix& B, const SubmatrixSelection& base, unsigned r) {
    check_lemma_setup(B, base);
    if (r == 0)
        throw Error(ErrorCode::InvalidArgument, "the exact form needs an integer exponent r >= 1");

    auto pow_r = [r](const Rational& v) {
        Rational p = 1;
        for (unsigned i = 0; i < r; ++i) p *= v;
        return p;
    };
    auto mean_pow = [&](const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) -> Rational {
        Rational s = 0;
        for (std::size_t i : rows)
            for (std::size_t j : cols) s += pow_r(B.at(i, j));
        return s / Rational(static_cast<long>(rows.size() * cols.size()));
    };

    std::vector<std::size_t> base_rows(base.rows.indices().begin(), base.rows.indices().end());
    std::vector<std::size_t> base_cols(base.cols.indices().begin(), base.cols.indices().end());
    Rational lhs = mean_pow(base_rows, base_cols);

    auto row_sets = all_subsets(B.rows(), base.rows.size());
    auto col_sets = all_subsets(B.cols(), base.cols.size());
    Rational partner_sum = 0;
    for (const auto& rows : row_sets) {
        auto ri = intersect(base.rows.indices(), rows);
        for (const auto& cols : col_sets) {
            auto ci = intersect(base.cols.indices(), cols);
            if (ri.empty() || ci.empty())
                throw Error(ErrorCode::EmptyIntersection, "overlap unexpectedly empty");
            partner_sum += mean_pow(ri, ci);
        }
    }
    Rational n_partners(static_cast<long>(row_sets.size() * col_sets.size()));
    return lhs - partner_sum / n_partners;
}

Interval brute_lemma(const RationalMatrix& B, const SubmatrixSelection& base, double r,
                     int precision_bits) {
    check_lemma_setup(B, base);
    if (!(r >= 0.0) || !std::isfinite(r))
        throw Error(ErrorCode::InvalidArgument, "exponent must be finite and >= 0");

    auto row_sets = all_subsets(B.rows(), base.rows.size());
    auto col_sets = all_subsets(B.cols(), base.cols.size());
    unsigned long n_partners = static_cast<unsigned long>(row_sets.size() * col_sets.size());

    // For r = 0 the identity is multiplicative; compare logs of the geometric
    // means (both sides are 0 when the base holds a zero entry).
    bool log_form = r == 0.0;
    if (log_form) {
        for (std::size_t i : base.rows.indices())
            for (std::size_t j : base.cols.indices())
                if (B.at(i, j) == 0) return Interval{0.0, 0.0};
    }

    auto side_term = [&](const std::vector<std::size_t>& rows,
                         const std::vector<std::size_t>& cols) -> Enclosure {
        unsigned long cell = static_cast<unsigned long>(rows.size() * cols.size());
        if (log_form) {
            Rational product = 1;
            for (std::size_t i : rows)
                for (std::size_t j : cols) product *= B.at(i, j);
            Enclosure e = Enclosure::log(product, precision_bits);
            e.div(cell);
            return e;
        }
        Enclosure e(precision_bits);
        for (std::size_t i : rows)
            for (std::size_t j : cols) {
                const Rational& v = B.at(i, j);
                if (v == 0) continue; // 0^r = 0 for r > 0
                e.add(Enclosure::pow(v, r, precision_bits));
            }
        e.div(cell);
        return e;
    };

    std::vector<std::size_t> base_rows(base.rows.indices().begin(), base.rows.indices().end());
    std::vector<std::size_t> base_cols(base.cols.indices().begin(), base.cols.indices().end());
    Enclosure result = side_term(base_rows, base_cols);

    Enclosure partner_sum(precision_bits);
    for (const auto& rows : row_sets) {
        auto ri = intersect(base.rows.indices(), rows);
        for (const auto& cols : col_sets) {
            auto ci = intersect(base.cols.indices(), cols);
            partner_sum.add(side_term(ri, ci));
        }
    }
    partner_sum.div(n_partners);
    result.sub(partner_sum);
    return Interval{result.lower(), result.upper()};
}

} // namespace mixmean::oracle
