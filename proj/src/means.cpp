#include "mixmean/means.hpp"

#include <cmath>
#include <string>

#include "mixmean/combinatorics.hpp"

namespace mixmean {

PowerExponent::PowerExponent(double value) : r(value) {
    if (!(value >= 0.0) || !std::isfinite(value))
        throw Error(ErrorCode::InvalidArgument, "power mean exponent must be finite and >= 0");
}

double power_mean(std::span<const double> values, PowerExponent r) {
    if (values.empty())
        throw Error(ErrorCode::EmptyInput, "power mean of an empty batch");
    double p = static_cast<double>(values.size());
    if (r.geometric()) {
        CompensatedSum logs;
        for (double v : values) {
            if (v == 0.0) return 0.0;
            logs.add(std::log(v));
        }
        return std::exp(logs.value() / p);
    }
    CompensatedSum powers;
    for (double v : values)
        powers.add(r.r == 1.0 ? v : std::pow(v, r.r));
    return std::pow(powers.value() / p, 1.0 / r.r);
}

SubmatrixStats submatrix_stats(const NonnegMatrix& B, const SubmatrixSelection& selection) {
    if (selection.rows.universe() != B.rows() || selection.cols.universe() != B.cols())
        throw Error(ErrorCode::SelectionOutOfRange, "selection universes do not match the matrix");
    SubmatrixStats stats;
    stats.entry_count = selection.rows.size() * selection.cols.size();
    CompensatedSum sum;
    CompensatedSum logs;
    for (std::size_t i : selection.rows.indices()) {
        for (std::size_t j : selection.cols.indices()) {
            double v = B.at(i, j);
            sum.add(v);
            if (v == 0.0)
                ++stats.zero_count;
            else
                logs.add(std::log(v));
        }
    }
    stats.sum = sum.value();
    stats.log_sum = logs.value();
    return stats;
}

RowSetColumnProfile::RowSetColumnProfile(const NonnegMatrix& B, std::span<const std::size_t> rows)
    : B_(&B), row_count_(0), col_sum_(B.cols(), 0.0), col_log_(B.cols(), 0.0),
      col_zero_(B.cols(), 0) {
    for (std::size_t i : rows) add_row(i);
}

void RowSetColumnProfile::add_row(std::size_t i) {
    for (std::size_t j = 0; j < B_->cols(); ++j) {
        double v = B_->at(i, j);
        col_sum_[j] += v;
        if (v == 0.0)
            ++col_zero_[j];
        else
            col_log_[j] += std::log(v);
    }
    ++row_count_;
}

void RowSetColumnProfile::remove_row(std::size_t i) {
    for (std::size_t j = 0; j < B_->cols(); ++j) {
        double v = B_->at(i, j);
        col_sum_[j] -= v;
        if (v == 0.0)
            --col_zero_[j];
        else
            col_log_[j] -= std::log(v);
    }
    --row_count_;
}

SubmatrixStats RowSetColumnProfile::stats_for_columns(std::span<const std::size_t> cols) const {
    SubmatrixStats stats;
    stats.entry_count = row_count_ * cols.size();
    for (std::size_t j : cols) {
        stats.sum += col_sum_[j];
        stats.log_sum += col_log_[j];
        stats.zero_count += col_zero_[j];
    }
    return stats;
}

void scan_all_submatrices(const NonnegMatrix& B, std::size_t k, std::size_t l, std::uint64_t cap,
                          const std::function<void(std::uint64_t, const SubmatrixStats&)>& emit) {
    RangeParams params{B.rows(), B.cols(), k, l};
    params.validate_shape();

    std::uint64_t row_subsets = binomial(params.m, params.k);
    std::uint64_t col_subsets = binomial(params.n, params.l);
    if (row_subsets > cap / col_subsets)
        throw Error(ErrorCode::CapExceeded,
                    "submatrix count " + std::to_string(params.m) + "C" + std::to_string(params.k) +
                        " * " + std::to_string(params.n) + "C" + std::to_string(params.l) +
                        " exceeds cap " + std::to_string(cap));

    BinomialTable table(params.m > params.n ? params.m : params.n);
    auto lex_rank = [&table](std::span<const std::size_t> subset, std::size_t n) {
        std::size_t k_ = subset.size();
        std::uint64_t later = 0;
        for (std::size_t j = 0; j < k_; ++j)
            later += table(n - 1 - subset[j], k_ - j);
        return table(n, k_) - 1 - later;
    };

    RevolvingDoorCursor rows(params.m, params.k);
    RowSetColumnProfile profile(B, rows.current());
    while (true) {
        std::uint64_t row_id = lex_rank(rows.current(), params.m) * col_subsets;

        // Revolving-door walk over column subsets, updating running totals
        // from the profile in O(1) per step.
        RevolvingDoorCursor cols(params.n, params.l);
        SubmatrixStats running;
        running.entry_count = params.k * params.l;
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
            emit(row_id + lex_rank(cols.current(), params.n), running);

            auto step = cols.advance();
            if (!step) break;
            sum.add(-profile.col_sum(step->removed));
            logs.add(-profile.col_log_sum(step->removed));
            running.zero_count -= profile.col_zero_count(step->removed);
            sum.add(profile.col_sum(step->inserted));
            logs.add(profile.col_log_sum(step->inserted));
            running.zero_count += profile.col_zero_count(step->inserted);
        }

        auto step = rows.advance();
        if (!step) break;
        profile.apply(step->removed, step->inserted);
    }
}

} // namespace mixmean
