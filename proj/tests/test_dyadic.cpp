#include "doctest.h"

#include <cmath>

#include <random>

#include "acspec/dyadic.hpp"

using namespace acspec;

TEST_CASE("interval set algebra") {
    const IntervalSet A({{0.0, 2.0}, {3.0, 5.0}});
    const IntervalSet B({{1.0, 4.0}});
    CHECK(A.measure() == 4.0);
    CHECK(IntervalSet::intersect(A, B).measure() == 2.0);
    CHECK(IntervalSet::unite(A, B).measure() == 5.0);
    CHECK(IntervalSet::difference(A, B).measure() == 2.0);
    CHECK(IntervalSet::symmetric_difference(A, A).measure() == 0.0);
    CHECK(A.cumulative(3.5) == 2.5);
    CHECK(A.invert_cumulative(2.0) == 2.0);
    CHECK(A.invert_cumulative(2.5) == 3.5);
}

TEST_CASE("uniform set partitions into equal cells") {
    const IntervalSet E({{0.0, 8.0}});
    const DyadicPartition part = dyadic_partition(E, 2);
    CHECK(part.n == 3);
    REQUIRE(part.cells.size() == 2);
    CHECK(part.cells[0].measure() == 4.0);
    CHECK(part.cells[0].pieces()[0].first == 0.0);
    CHECK(part.cells[0].pieces()[0].second == 4.0);
    CHECK(part.cells[1].pieces()[0].first == 4.0);
    CHECK(part.cells[1].pieces()[0].second == 8.0);
    CHECK_THROWS_AS(dyadic_partition(E, 3), DomainError);
}

TEST_CASE("partition cells jump across gaps with exact measure") {
    const IntervalSet E({{0.0, 2.0}, {10.0, 12.0}});
    const DyadicPartition part = dyadic_partition(E, 1);
    REQUIRE(part.cells.size() == 2);
    CHECK(part.cells[0].measure() == 2.0);
    CHECK(part.cells[1].measure() == 2.0);
    CHECK(part.cells[1].pieces()[0].first == 10.0); // a_{1,1} resolved at the jump
    CHECK(part.cells[1].pieces()[0].second == 12.0);
}

TEST_CASE("partition invariants on random sets") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const IntervalSet E = random_interval_set(seed, 1 + seed % 5, 64.0);
        const double mE = E.measure();
        int n = 0;
        while (std::exp2(n) < mE) ++n;
        while (n > 0 && std::exp2(n - 1) >= mE) --n;
        for (int m = n - 1; m >= n - 3 && m > -18; --m) {
            const DyadicPartition part = dyadic_partition(E, m);
            const double cell = std::exp2(m);
            double total = 0;
            IntervalSet acc;
            for (const auto& c : part.cells) {
                CHECK(c.measure() <= cell * (1.0 + 1e-12));
                CHECK(IntervalSet::intersect(acc, c).measure() == 0.0);
                acc = IntervalSet::unite(acc, c);
                total += c.measure();
            }
            CHECK(total == mE); // exact on tick-quantized instances
            CHECK(IntervalSet::symmetric_difference(acc, E).measure() == 0.0);
            // cell count within the dyadic bounds
            const double count = double(part.cells.size());
            CHECK(count <= std::exp2(part.n - m));
            CHECK(count >= std::exp2(part.n - m - 1));
        }
    }
}

TEST_CASE("cover selection follows the binary expansion") {
    const IntervalSet E({{0.0, 8.0}});
    // s = 5 = 4 + 1: one level-2 cell and one level-0 cell
    const DyadicCover c5 = dyadic_cover_select(E, 5.0);
    REQUIRE(c5.cells.size() == 2);
    CHECK(c5.cells[0].level == 2);
    CHECK(c5.cells[0].index == 0);
    CHECK(c5.cells[1].level == 0);
    CHECK(c5.cells[1].index == 4);
    CHECK(c5.exact);
    CHECK(c5.covered_measure == 5.0);

    // s a power of two: a single cell
    const DyadicCover c4 = dyadic_cover_select(E, 4.0);
    REQUIRE(c4.cells.size() == 1);
    CHECK(c4.cells[0].level == 2);
}

TEST_CASE("cover exactness with zero tolerance on random instances") {
    std::mt19937_64 rng(2027);
    std::uniform_real_distribution<double> u(0.1, 60.0);
    for (int trial = 0; trial < 100; ++trial) {
        const IntervalSet E = random_interval_set(1000 + trial, 1 + trial % 6, 64.0);
        const double tick = std::exp2(-16);
        const double N = std::floor(u(rng) / tick) * tick;
        const DyadicCover cover = dyadic_cover_select(E, N, -20);
        CHECK(cover.exact);

        IntervalSet acc;
        int last_level = 1000;
        for (const auto& c : cover.cells) {
            CHECK(c.level < last_level); // at most one per level, descending
            last_level = c.level;
            CHECK(IntervalSet::intersect(acc, c.set).measure() == 0.0);
            acc = IntervalSet::unite(acc, c.set);
        }
        const IntervalSet target = E.clipped_above(N);
        CHECK(IntervalSet::symmetric_difference(acc, target).measure() == 0.0);
        CHECK(acc.measure() == target.measure());
    }
}

TEST_CASE("cover of an empty slice") {
    const IntervalSet E({{4.0, 8.0}});
    const DyadicCover c = dyadic_cover_select(E, 2.0);
    CHECK(c.cells.empty());
    CHECK(c.exact);
    CHECK_THROWS_AS(dyadic_cover_select(E, -1.0), DomainError);
}
