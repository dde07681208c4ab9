#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "mixmean/combinatorics.hpp"

using namespace mixmean;

namespace {

// Pascal-triangle oracle, independent of the multiplicative implementation.
std::vector<std::vector<std::uint64_t>> pascal(std::size_t max_n) {
    std::vector<std::vector<std::uint64_t>> t(max_n + 1);
    for (std::size_t n = 0; n <= max_n; ++n) {
        t[n].resize(n + 1, 1);
        for (std::size_t k = 1; k < n; ++k) t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
    }
    return t;
}

std::uint64_t subset_bits(const std::vector<std::size_t>& indices) {
    std::uint64_t bits = 0;
    for (std::size_t i : indices) bits |= std::uint64_t(1) << i;
    return bits;
}

} // namespace

TEST_CASE("binomial matches the Pascal triangle up to n = 64") {
    auto table = pascal(64);
    for (std::size_t n = 0; n <= 64; ++n)
        for (std::size_t k = 0; k <= n; ++k) CHECK(binomial(n, k) == table[n][k]);
}

TEST_CASE("binomial edge values") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(12, 7) == 792);
    CHECK(binomial(3, 5) == 0);
    CHECK_THROWS_AS(binomial(70, 35), Error);
    try {
        binomial(70, 35);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Overflow);
    }
}

TEST_CASE("rank and unrank are inverse bijections for n <= 12") {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            std::uint64_t total = binomial(n, k);
            std::set<std::vector<std::size_t>> seen;
            for (std::uint64_t r = 0; r < total; ++r) {
                IndexSubset s = subset_unrank(n, k, r);
                CHECK(subset_rank(s) == r);
                seen.insert(std::vector<std::size_t>(s.indices().begin(), s.indices().end()));
            }
            CHECK(seen.size() == total);
            CHECK_THROWS_AS(subset_unrank(n, k, total), Error);
        }
    }
}

TEST_CASE("unrank pinned examples") {
    CHECK(subset_unrank(4, 2, 0) == IndexSubset(4, {0, 1}));
    CHECK(subset_unrank(4, 2, 5) == IndexSubset(4, {2, 3}));
    CHECK(subset_unrank(5, 3, 9) == IndexSubset(5, {2, 3, 4}));
}

TEST_CASE("lex enumeration is ordered, complete, and rank-consistent") {
    auto subsets = enumerate_lex(4, 2);
    REQUIRE(subsets.size() == 6);
    CHECK(subsets[0] == IndexSubset(4, {0, 1}));
    CHECK(subsets[1] == IndexSubset(4, {0, 2}));
    CHECK(subsets[5] == IndexSubset(4, {2, 3}));

    for (std::size_t n = 1; n <= 14; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            auto all = enumerate_lex(n, k);
            CHECK(all.size() == binomial(n, k));
            std::set<std::uint64_t> seen;
            for (std::uint64_t r = 0; r < all.size(); ++r) {
                CHECK(subset_rank(all[r]) == r);
                seen.insert(subset_bits(
                    std::vector<std::size_t>(all[r].indices().begin(), all[r].indices().end())));
            }
            CHECK(seen.size() == all.size());
        }
    }
}

TEST_CASE("lex cursor wraps back to the initial subset after C(n, k) steps") {
    for (std::size_t n : {1, 4, 7}) {
        for (std::size_t k = 1; k <= n; ++k) {
            SubsetCursor cursor(n, k);
            std::vector<std::size_t> first = cursor.current();
            std::uint64_t total = binomial(n, k);
            for (std::uint64_t step = 0; step + 1 < total; ++step) CHECK(cursor.advance());
            CHECK_FALSE(cursor.advance()); // the wrap
            CHECK(cursor.current() == first);
            CHECK(cursor.rank() == 0);
        }
    }
}

TEST_CASE("lex cursor can start at any rank") {
    SubsetCursor cursor = SubsetCursor::at_rank(6, 3, 11);
    CHECK(cursor.rank() == 11);
    CHECK(IndexSubset(6, cursor.current()) == subset_unrank(6, 3, 11));
    cursor.advance();
    CHECK(cursor.rank() == 12);
    CHECK(IndexSubset(6, cursor.current()) == subset_unrank(6, 3, 12));
}

TEST_CASE("revolving door visits every subset once with single swaps, n <= 14") {
    for (std::size_t n = 1; n <= 14; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            RevolvingDoorCursor cursor(n, k);
            std::vector<std::size_t> expected(k);
            for (std::size_t i = 0; i < k; ++i) expected[i] = i;
            CHECK(cursor.current() == expected);

            std::set<std::uint64_t> seen{subset_bits(cursor.current())};
            std::uint64_t previous_bits = subset_bits(cursor.current());
            while (auto step = cursor.advance()) {
                std::uint64_t bits = subset_bits(cursor.current());
                // Exactly one out, one in.
                CHECK(std::popcount(previous_bits ^ bits) == 2);
                // The reported swap is the actual set difference.
                CHECK((previous_bits & (std::uint64_t(1) << step->removed)) != 0);
                CHECK((bits & (std::uint64_t(1) << step->inserted)) != 0);
                CHECK((previous_bits ^ bits) ==
                      ((std::uint64_t(1) << step->removed) | (std::uint64_t(1) << step->inserted)));
                // Still sorted and in range.
                CHECK(std::is_sorted(cursor.current().begin(), cursor.current().end()));
                CHECK(cursor.current().back() < n);
                seen.insert(bits);
                previous_bits = bits;
            }
            CHECK(seen.size() == binomial(n, k));
            CHECK_FALSE(cursor.advance().has_value()); // stays exhausted
        }
    }
}

TEST_CASE("revolving door enumeration pinned for (4, 2)") {
    auto items = enumerate_revolving_door(4, 2);
    REQUIRE(items.size() == 6);
    CHECK_FALSE(items[0].swap.has_value());
    CHECK(items[0].subset == IndexSubset(4, {0, 1}));
    CHECK(items[1].subset == IndexSubset(4, {1, 2}));
    CHECK(items[2].subset == IndexSubset(4, {0, 2}));
    CHECK(items[3].subset == IndexSubset(4, {2, 3}));
    CHECK(items[4].subset == IndexSubset(4, {1, 3}));
    CHECK(items[5].subset == IndexSubset(4, {0, 3}));
}

TEST_CASE("binomial table agrees with binomial and rejects overflow") {
    BinomialTable table(30);
    for (std::size_t n = 0; n <= 30; ++n)
        for (std::size_t k = 0; k <= n; ++k) CHECK(table(n, k) == binomial(n, k));
    CHECK(table(5, 9) == 0);
    CHECK_THROWS_AS(BinomialTable(128), Error);
}

TEST_CASE("index subset validation") {
    CHECK_THROWS_AS(IndexSubset(4, {}), Error);
    CHECK_THROWS_AS(IndexSubset(4, {1, 1}), Error);
    CHECK_THROWS_AS(IndexSubset(4, {2, 1}), Error);
    CHECK_THROWS_AS(IndexSubset(4, {0, 4}), Error);
    CHECK_THROWS_AS(IndexSubset(2, {0, 1, 1}), Error);
    IndexSubset ok(4, {0, 3});
    CHECK(ok.size() == 2);
    CHECK(ok[1] == 3);
}
