#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mixmean/matrix.hpp"
#include "mixmean/subset.hpp"

namespace mixmean {

// Exponent of a power mean.  r = 0 is the geometric mean (the r -> 0 limit);
// negative exponents are outside the model.
struct PowerExponent {
    double r = 1.0;

    PowerExponent() = default;
    PowerExponent(double value); // validates r >= 0 and finite

    bool geometric() const noexcept { return r == 0.0; }
};

// Neumaier variant of compensated summation; merge() keeps reductions
// associative enough to be deterministic for a fixed partition layout.
class CompensatedSum {
public:
    void add(double x) noexcept {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    void merge(const CompensatedSum& other) noexcept {
        add(other.sum_);
        comp_ += other.comp_;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Power mean of a nonempty batch of nonnegative values:
//   r > 0:  ((x_1^r + ... + x_p^r) / p)^(1/r)
//   r = 0:  (x_1 * ... * x_p)^(1/p), computed in the log domain
double power_mean(std::span<const double> values, PowerExponent r);

// Aggregates of one submatrix.  zero_count is exact, which is what makes the
// zero short-circuits exact: the arithmetic mean is 0 iff every entry is 0,
// the geometric mean is 0 iff any entry is 0.
struct SubmatrixStats {
    std::size_t entry_count = 0;
    std::size_t zero_count = 0;
    double sum = 0.0;     // sum of all entries
    double log_sum = 0.0; // sum of log(entry) over positive entries

    double arithmetic_mean() const noexcept {
        if (zero_count == entry_count) return 0.0;
        return (sum > 0.0 ? sum : 0.0) / static_cast<double>(entry_count);
    }
    double geometric_mean() const noexcept {
        if (zero_count > 0) return 0.0;
        return std::exp(log_sum / static_cast<double>(entry_count));
    }
};

SubmatrixStats submatrix_stats(const NonnegMatrix& B, const SubmatrixSelection& selection);

// Per-column aggregates over a set of rows, maintained under row swaps so a
// column walk can assemble any submatrix's stats in O(columns touched).
class RowSetColumnProfile {
public:
    RowSetColumnProfile(const NonnegMatrix& B, std::span<const std::size_t> rows);

    void add_row(std::size_t i);
    void remove_row(std::size_t i);
    void apply(std::size_t removed_row, std::size_t inserted_row) {
        remove_row(removed_row);
        add_row(inserted_row);
    }

    std::size_t row_count() const noexcept { return row_count_; }
    double col_sum(std::size_t j) const noexcept { return col_sum_[j]; }
    double col_log_sum(std::size_t j) const noexcept { return col_log_[j]; }
    std::size_t col_zero_count(std::size_t j) const noexcept { return col_zero_[j]; }

    SubmatrixStats stats_for_columns(std::span<const std::size_t> cols) const;

private:
    const NonnegMatrix* B_;
    std::size_t row_count_;
    std::vector<double> col_sum_;
    std::vector<double> col_log_;
    std::vector<std::size_t> col_zero_;
};

// Streams (canonical id, stats) for every k x l submatrix.  The walk is
// revolving-door over rows and over columns, so emission order is the Gray
// order, not id order; ids are exact and each appears exactly once.
// Canonical id = lex rank of rows * C(n, l) + lex rank of columns.
// Throws Error{CapExceeded} when C(m,k)*C(n,l) > cap.
void scan_all_submatrices(const NonnegMatrix& B, std::size_t k, std::size_t l,
                          std::uint64_t cap,
                          const std::function<void(std::uint64_t, const SubmatrixStats&)>& emit);

} // namespace mixmean
