#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mixmean/error.hpp"

namespace mixmean {

// Strictly increasing index subset of {0, ..., universe-1}, never empty.
class IndexSubset {
public:
    IndexSubset(std::size_t universe, std::vector<std::size_t> indices)
        : universe_(universe), indices_(std::move(indices)) {
        if (indices_.empty() || indices_.size() > universe_)
            throw Error(ErrorCode::SelectionOutOfRange, "subset size must satisfy 1 <= k <= universe");
        for (std::size_t i = 0; i < indices_.size(); ++i) {
            if (indices_[i] >= universe_)
                throw Error(ErrorCode::SelectionOutOfRange, "subset index exceeds universe");
            if (i > 0 && indices_[i] <= indices_[i - 1])
                throw Error(ErrorCode::SelectionOutOfRange, "subset indices must be strictly increasing");
        }
    }

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return indices_.size(); }
    std::span<const std::size_t> indices() const noexcept { return indices_; }
    std::size_t operator[](std::size_t i) const { return indices_[i]; }

    bool operator==(const IndexSubset&) const = default;

private:
    std::size_t universe_;
    std::vector<std::size_t> indices_;
};

// A k x l submatrix named by its row and column subsets.
struct SubmatrixSelection {
    IndexSubset rows;
    IndexSubset cols;

    bool operator==(const SubmatrixSelection&) const = default;
};

// Problem dimensions.  The inequality is claimed only when each submatrix
// covers more than half of each dimension: 2k > m and 2l > n.
struct RangeParams {
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t l = 0;

    bool valid_range() const noexcept { return 2 * k > m && 2 * l > n; }

    void validate_shape() const {
        if (m == 0 || n == 0)
            throw Error(ErrorCode::EmptyMatrix, "matrix dimensions must be positive");
        if (k == 0 || k > m || l == 0 || l > n)
            throw Error(ErrorCode::SelectionOutOfRange, "submatrix shape must satisfy 1 <= k <= m and 1 <= l <= n");
    }
};

} // namespace mixmean
