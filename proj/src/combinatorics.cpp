#include "mixmean/combinatorics.hpp"

#include <limits>
#include <numeric>
#include <string>

namespace mixmean {

std::uint64_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i; // exact at every step
        if (result > std::numeric_limits<std::uint64_t>::max())
            throw Error(ErrorCode::Overflow, "binomial(" + std::to_string(n) + ", " +
                                                 std::to_string(k) + ") exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(result);
}

std::uint64_t subset_rank(const IndexSubset& subset) {
    std::size_t n = subset.universe();
    std::size_t k = subset.size();
    // Count the subsets that come after this one in lex order: those still
    // free to pick a larger index at position j.
    std::uint64_t later = 0;
    for (std::size_t j = 0; j < k; ++j)
        later += binomial(n - 1 - subset[j], k - j);
    return binomial(n, k) - 1 - later;
}

IndexSubset subset_unrank(std::size_t universe, std::size_t k, std::uint64_t rank) {
    if (k == 0 || k > universe)
        throw Error(ErrorCode::SelectionOutOfRange, "subset size must satisfy 1 <= k <= universe");
    if (rank >= binomial(universe, k))
        throw Error(ErrorCode::RankOutOfRange,
                    "rank " + std::to_string(rank) + " out of range for C(" +
                        std::to_string(universe) + ", " + std::to_string(k) + ")");
    std::vector<std::size_t> indices(k);
    std::uint64_t remaining = rank;
    std::size_t v = 0;
    for (std::size_t j = 0; j < k; ++j) {
        while (true) {
            std::uint64_t with_v = binomial(universe - 1 - v, k - 1 - j);
            if (remaining < with_v) break;
            remaining -= with_v;
            ++v;
        }
        indices[j] = v++;
    }
    return IndexSubset(universe, std::move(indices));
}

SubsetCursor::SubsetCursor(std::size_t universe, std::size_t k)
    : universe_(universe), indices_(k), rank_(0), count_(binomial(universe, k)) {
    if (k == 0 || k > universe)
        throw Error(ErrorCode::SelectionOutOfRange, "subset size must satisfy 1 <= k <= universe");
    std::iota(indices_.begin(), indices_.end(), std::size_t{0});
}

SubsetCursor SubsetCursor::at_rank(std::size_t universe, std::size_t k, std::uint64_t rank) {
    SubsetCursor cursor(universe, k);
    IndexSubset subset = subset_unrank(universe, k, rank);
    cursor.indices_.assign(subset.indices().begin(), subset.indices().end());
    cursor.rank_ = rank;
    return cursor;
}

bool SubsetCursor::advance() {
    std::size_t k = indices_.size();
    std::size_t j = k;
    while (j > 0 && indices_[j - 1] == universe_ - k + (j - 1)) --j;
    if (j == 0) {
        std::iota(indices_.begin(), indices_.end(), std::size_t{0});
        rank_ = 0;
        return false;
    }
    std::size_t v = ++indices_[j - 1];
    for (std::size_t i = j; i < k; ++i) indices_[i] = ++v;
    ++rank_;
    return true;
}

RevolvingDoorCursor::RevolvingDoorCursor(std::size_t universe, std::size_t k)
    : universe_(universe), k_(k), c_(k + 2), current_view_(k),
      count_(binomial(universe, k)), exhausted_(false) {
    if (k == 0 || k > universe)
        throw Error(ErrorCode::SelectionOutOfRange, "subset size must satisfy 1 <= k <= universe");
    for (std::size_t j = 1; j <= k_; ++j) c_[j] = j - 1;
    c_[k_ + 1] = universe_; // sentinel
    sync_view();
}

void RevolvingDoorCursor::sync_view() {
    for (std::size_t j = 0; j < k_; ++j) current_view_[j] = c_[j + 1];
}

// One revolving-door step.  Level j tries to move c_j up when k - j is even
// and down when it is odd; the first level that can move does, carrying the
// level below with it so the walk stays a single swap per visit.
std::optional<SwapStep> RevolvingDoorCursor::advance() {
    if (exhausted_) return std::nullopt;
    SwapStep step;
    std::size_t j = 1;
    while (true) {
        bool moved = false;
        if ((k_ - j) % 2 == 0) {
            if (c_[j] + 1 < c_[j + 1]) {
                std::size_t old = c_[j];
                if (j >= 2) {
                    step.removed = c_[j - 1];
                    c_[j - 1] = old;
                } else {
                    step.removed = old;
                }
                c_[j] = old + 1;
                step.inserted = old + 1;
                moved = true;
            }
        } else {
            if (j == 1 ? c_[1] > 0 : c_[j] >= j) {
                if (j == 1) {
                    step.removed = c_[1];
                    step.inserted = c_[1] - 1;
                    c_[1] -= 1;
                } else {
                    step.removed = c_[j];
                    step.inserted = j - 2;
                    c_[j] = c_[j - 1];
                    c_[j - 1] = j - 2;
                }
                moved = true;
            }
        }
        if (moved) break;
        if (++j > k_) {
            exhausted_ = true;
            return std::nullopt;
        }
    }
    sync_view();
    return step;
}

std::vector<IndexSubset> enumerate_lex(std::size_t universe, std::size_t k) {
    std::vector<IndexSubset> result;
    result.reserve(binomial(universe, k));
    SubsetCursor cursor(universe, k);
    do {
        result.emplace_back(universe, cursor.current());
    } while (cursor.advance());
    return result;
}

std::vector<RevolvingDoorItem> enumerate_revolving_door(std::size_t universe, std::size_t k) {
    std::vector<RevolvingDoorItem> result;
    result.reserve(binomial(universe, k));
    RevolvingDoorCursor cursor(universe, k);
    result.push_back({IndexSubset(universe, cursor.current()), std::nullopt});
    while (auto step = cursor.advance())
        result.push_back({IndexSubset(universe, cursor.current()), step});
    return result;
}

BinomialTable::BinomialTable(std::size_t max_n) : max_n_(max_n), table_((max_n + 1) * (max_n + 1)) {
    for (std::size_t n = 0; n <= max_n_; ++n) {
        for (std::size_t k = 0; k <= n; ++k) {
            std::uint64_t v;
            if (k == 0 || k == n) {
                v = 1;
            } else {
                std::uint64_t a = table_[(n - 1) * (max_n_ + 1) + k - 1];
                std::uint64_t b = table_[(n - 1) * (max_n_ + 1) + k];
                if (a > std::numeric_limits<std::uint64_t>::max() - b)
                    throw Error(ErrorCode::Overflow, "binomial table exceeds 64 bits");
                v = a + b;
            }
            table_[n * (max_n_ + 1) + k] = v;
        }
    }
}

std::uint64_t BinomialTable::operator()(std::size_t n, std::size_t k) const {
    if (k > n) return 0;
    return table_[n * (max_n_ + 1) + k];
}

} // namespace mixmean
