#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mixmean/subset.hpp"

namespace mixmean {

// Exact binomial coefficient; throws Error{Overflow} instead of wrapping.
std::uint64_t binomial(std::size_t n, std::size_t k);

// Position of a subset in lexicographic order among all subsets of its size.
std::uint64_t subset_rank(const IndexSubset& subset);

// Inverse of subset_rank; throws Error{RankOutOfRange} for rank >= C(n, k).
IndexSubset subset_unrank(std::size_t universe, std::size_t k, std::uint64_t rank);

// One move of a revolving-door walk: one index leaves, one enters.
struct SwapStep {
    std::size_t removed = 0;
    std::size_t inserted = 0;
};

// Cyclic lexicographic walk over all k-subsets of {0..universe-1}, tracking
// the rank as it goes.  advance() returns false on the step that wraps back
// to rank 0, so exactly C(universe, k) calls return to the start.
class SubsetCursor {
public:
    SubsetCursor(std::size_t universe, std::size_t k);
    static SubsetCursor at_rank(std::size_t universe, std::size_t k, std::uint64_t rank);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t subset_size() const noexcept { return indices_.size(); }
    const std::vector<std::size_t>& current() const noexcept { return indices_; }
    std::uint64_t rank() const noexcept { return rank_; }
    std::uint64_t count() const noexcept { return count_; }

    bool advance();

private:
    std::size_t universe_;
    std::vector<std::size_t> indices_;
    std::uint64_t rank_;
    std::uint64_t count_;
};

// Visits every k-subset exactly once such that consecutive subsets differ by
// a single swap.  advance() reports the swap, or nullopt once exhausted.
class RevolvingDoorCursor {
public:
    RevolvingDoorCursor(std::size_t universe, std::size_t k);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t subset_size() const noexcept { return k_; }
    const std::vector<std::size_t>& current() const noexcept { return current_view_; }
    std::uint64_t count() const noexcept { return count_; }

    std::optional<SwapStep> advance();

private:
    std::size_t universe_;
    std::size_t k_;
    std::vector<std::size_t> c_; // 1-based working array with sentinel c_[k+1]
    std::vector<std::size_t> current_view_;
    std::uint64_t count_;
    bool exhausted_;

    void sync_view();
};

// Materialized enumerations, convenient at small scale.
std::vector<IndexSubset> enumerate_lex(std::size_t universe, std::size_t k);

struct RevolvingDoorItem {
    IndexSubset subset;
    std::optional<SwapStep> swap; // empty for the first subset visited
};
std::vector<RevolvingDoorItem> enumerate_revolving_door(std::size_t universe, std::size_t k);

// Cached Pascal triangle for hot loops; values clamped at the first overflow
// row would be wrong, so the table refuses dimensions it cannot hold exactly.
class BinomialTable {
public:
    explicit BinomialTable(std::size_t max_n);
    std::uint64_t operator()(std::size_t n, std::size_t k) const;

private:
    std::size_t max_n_;
    std::vector<std::uint64_t> table_;
};

} // namespace mixmean
