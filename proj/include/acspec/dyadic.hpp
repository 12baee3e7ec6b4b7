#ifndef ACSPEC_DYADIC_HPP
#define ACSPEC_DYADIC_HPP

#include <vector>

#include "acspec/numutil.hpp"

namespace acspec {

// Finite union of disjoint open intervals on (0, inf), kept sorted and
// normalized (no empty or touching pieces). Set operations only compare and
// copy endpoints, so instances built on dyadic-rational endpoints stay exact.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<std::pair<double, double>> intervals);

    const std::vector<std::pair<double, double>>& pieces() const { return iv_; }
    bool empty() const { return iv_.empty(); }
    double measure() const;
    double sup() const { return iv_.empty() ? 0.0 : iv_.back().second; }

    // m((0, a) intersect E)
    double cumulative(double a) const;
    // inf{ a : m((0,a) intersect E) = target }; target in [0, measure()]
    double invert_cumulative(double target) const;

    IntervalSet clipped_below(double a) const; // intersect with (a, inf)
    IntervalSet clipped_above(double a) const; // intersect with (0, a)

    static IntervalSet intersect(const IntervalSet& A, const IntervalSet& B);
    static IntervalSet unite(const IntervalSet& A, const IntervalSet& B);
    static IntervalSet difference(const IntervalSet& A, const IntervalSet& B);
    static IntervalSet symmetric_difference(const IntervalSet& A, const IntervalSet& B);

private:
    std::vector<std::pair<double, double>> iv_;
};

// Cells E_{m,l} = (a_{m,l}, a_{m,l+1}) intersect E with
// a_{m,l} = inf{ a : m((0,a) intersect E) = 2^m l }. Missing cells are empty.
struct DyadicPartition {
    int level = 0;                  // m
    int n = 0;                      // 2^{n-1} <= m(E) <= 2^n
    IntervalSet support;            // E
    std::vector<IntervalSet> cells; // index l
};

DyadicPartition dyadic_partition(const IntervalSet& E, int m);

// Binary-expansion cover of E intersect (0, N): disjoint cells, at most one
// per level, selected by s = m(E intersect (0,N)) = sum s_m 2^m with
// l = sum_{j>m} s_j 2^{j-m}. Expansion is truncated at min_level; on
// dyadic-rational instances it terminates and the cover is exact.
struct DyadicCover {
    struct Cell {
        int level = 0;
        long long index = 0; // l
        IntervalSet set;
    };
    std::vector<Cell> cells;
    double covered_measure = 0;
    double target_measure = 0; // s
    bool exact = false;        // expansion terminated above min_level
};

DyadicCover dyadic_cover_select(const IntervalSet& E, double N, int min_level = -40);

// Seeded random union of k disjoint intervals inside (0, span), endpoints on
// 2^-16 ticks (exact double arithmetic downstream).
IntervalSet random_interval_set(std::uint64_t seed, std::size_t k, double span);

} // namespace acspec

#endif
