#include "acspec/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace acspec {

IntervalSet::IntervalSet(std::vector<std::pair<double, double>> intervals) {
    for (auto& p : intervals) {
        if (!(p.first >= 0.0)) throw DomainError("IntervalSet: intervals must lie in (0, inf)");
        if (p.first >= p.second) continue; // drop empty
        iv_.push_back(p);
    }
    std::sort(iv_.begin(), iv_.end());
    // merge overlaps/touches
    std::vector<std::pair<double, double>> merged;
    for (const auto& p : iv_) {
        if (!merged.empty() && p.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, p.second);
        else
            merged.push_back(p);
    }
    iv_ = std::move(merged);
}

double IntervalSet::measure() const {
    double m = 0;
    for (const auto& p : iv_) m += p.second - p.first;
    return m;
}

double IntervalSet::cumulative(double a) const {
    double m = 0;
    for (const auto& p : iv_) {
        if (a <= p.first) break;
        m += std::min(a, p.second) - p.first;
    }
    return m;
}

double IntervalSet::invert_cumulative(double target) const {
    if (target < 0) throw DomainError("invert_cumulative: negative target");
    if (target == 0) return iv_.empty() ? 0.0 : iv_.front().first;
    double acc = 0;
    for (const auto& p : iv_) {
        const double len = p.second - p.first;
        if (acc + len >= target) return p.first + (target - acc);
        acc += len;
    }
    throw DomainError("invert_cumulative: target exceeds the measure of the set");
}

IntervalSet IntervalSet::clipped_below(double a) const {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : iv_) {
        if (p.second <= a) continue;
        out.emplace_back(std::max(p.first, a), p.second);
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::clipped_above(double a) const {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : iv_) {
        if (p.first >= a) break;
        out.emplace_back(p.first, std::min(p.second, a));
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::intersect(const IntervalSet& A, const IntervalSet& B) {
    std::vector<std::pair<double, double>> out;
    std::size_t i = 0, j = 0;
    while (i < A.iv_.size() && j < B.iv_.size()) {
        const double lo = std::max(A.iv_[i].first, B.iv_[j].first);
        const double hi = std::min(A.iv_[i].second, B.iv_[j].second);
        if (lo < hi) out.emplace_back(lo, hi);
        if (A.iv_[i].second < B.iv_[j].second)
            ++i;
        else
            ++j;
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& A, const IntervalSet& B) {
    std::vector<std::pair<double, double>> out = A.iv_;
    out.insert(out.end(), B.iv_.begin(), B.iv_.end());
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::difference(const IntervalSet& A, const IntervalSet& B) {
    std::vector<std::pair<double, double>> out;
    for (const auto& a : A.iv_) {
        double lo = a.first;
        for (const auto& b : B.iv_) {
            if (b.second <= lo) continue;
            if (b.first >= a.second) break;
            if (b.first > lo) out.emplace_back(lo, b.first);
            lo = std::max(lo, b.second);
            if (lo >= a.second) break;
        }
        if (lo < a.second) out.emplace_back(lo, a.second);
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::symmetric_difference(const IntervalSet& A, const IntervalSet& B) {
    return unite(difference(A, B), difference(B, A));
}

namespace {

// smallest n with m(E) <= 2^n (may be negative)
int dyadic_ceiling(double measure) {
    int n = (int)std::ceil(std::log2(measure));
    while (std::exp2(n - 1) >= measure) --n;
    while (std::exp2(n) < measure) ++n;
    return n;
}

} // namespace

DyadicPartition dyadic_partition(const IntervalSet& E, int m) {
    const double mE = E.measure();
    if (!(mE > 0)) throw DomainError("dyadic_partition: empty support");
    const int n = dyadic_ceiling(mE);
    if (!(m < n)) throw DomainError("dyadic_partition: level m must satisfy m < n");

    DyadicPartition part;
    part.level = m;
    part.n = n;
    part.support = E;
    const double cell = std::exp2(m);
    const long long count = (long long)std::ceil(mE / cell);
    part.cells.reserve(std::size_t(count));
    for (long long l = 0; l < count; ++l) {
        const double lo = E.invert_cumulative(cell * double(l));
        const double hi =
            cell * double(l + 1) >= mE ? E.sup() : E.invert_cumulative(cell * double(l + 1));
        part.cells.push_back(IntervalSet::intersect(
            E, IntervalSet({{lo, hi}})));
    }
    return part;
}

DyadicCover dyadic_cover_select(const IntervalSet& E, double N, int min_level) {
    if (!(N > 0)) throw DomainError("dyadic_cover_select: N must be positive");
    DyadicCover cover;
    const IntervalSet EN = E.clipped_above(N);
    const double s = EN.measure();
    cover.target_measure = s;
    if (s == 0) {
        cover.exact = true;
        return cover;
    }

    const int n = dyadic_ceiling(E.measure());

    double consumed = 0;
    for (int m = n; m >= min_level; --m) {
        const double cell = std::exp2(m);
        if (consumed + cell > s) continue;
        // this level's bit is set; l = consumed / 2^m by construction
        const long long l = (long long)std::llround(consumed / cell);
        const double lo = E.invert_cumulative(consumed);
        const double hi = E.invert_cumulative(consumed + cell);
        DyadicCover::Cell c;
        c.level = m;
        c.index = l;
        c.set = IntervalSet::intersect(E, IntervalSet({{lo, hi}}));
        cover.cells.push_back(std::move(c));
        consumed += cell;
        if (consumed == s) break;
    }
    cover.exact = (consumed == s);
    double cm = 0;
    for (const auto& c : cover.cells) cm += c.set.measure();
    cover.covered_measure = cm;
    return cover;
}

IntervalSet random_interval_set(std::uint64_t seed, std::size_t k, double span) {
    if (k == 0 || !(span > 0)) throw DomainError("random_interval_set: bad parameters");
    std::mt19937_64 rng(seed);
    const double tick = std::exp2(-16);
    const std::uint64_t max_tick = std::uint64_t(span / tick);
    if (max_tick < 2 * k + 2) throw DomainError("random_interval_set: span too short");
    std::uniform_int_distribution<std::uint64_t> pos(1, max_tick);
    std::vector<std::uint64_t> cuts;
    while (cuts.size() < 2 * k) {
        const std::uint64_t c = pos(rng);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<double, double>> iv;
    for (std::size_t i = 0; i < k; ++i)
        iv.emplace_back(double(cuts[2 * i]) * tick, double(cuts[2 * i + 1]) * tick);
    return IntervalSet(std::move(iv));
}

} // namespace acspec
