#include "acspec/stepfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace acspec {

void StepFunction::validate() const {
    if (breakpoints.size() != values.size() + 1 || values.empty())
        throw DomainError("StepFunction: breakpoints must be values.size() + 1");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
        if (!(breakpoints[i] < breakpoints[i + 1]))
            throw DomainError("StepFunction: breakpoints must be strictly increasing");
}

double StepFunction::eval(double x) const {
    if (x < breakpoints.front() || x >= breakpoints.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    const std::size_t i = std::size_t(it - breakpoints.begin());
    if (i == 0 || i > values.size()) return 0.0;
    return values[i - 1];
}

double StepFunction::support_measure() const {
    double m = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] != 0.0) m += breakpoints[i + 1] - breakpoints[i];
    return m;
}

double StepFunction::measure_above(double s) const {
    double m = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (std::abs(values[i]) > s) m += breakpoints[i + 1] - breakpoints[i];
    return m;
}

double StepFunction::sup_abs() const {
    double s = 0;
    for (double v : values) s = std::max(s, std::abs(v));
    return s;
}

StepFunction StepFunction::dilated(double c) const {
    if (!(c > 0)) throw DomainError("StepFunction::dilated: factor must be positive");
    StepFunction g = *this;
    for (double& b : g.breakpoints) b *= c;
    return g;
}

StepFunction make_indicator(double a, double b) {
    if (!(a < b)) throw DomainError("make_indicator: need a < b");
    StepFunction f;
    f.breakpoints = {a, b};
    f.values = {1.0};
    return f;
}

StepFunction rearrangement(const StepFunction& f) {
    f.validate();
    std::vector<std::pair<double, double>> pieces; // (|value|, length), nonzero only
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] != 0.0)
            pieces.emplace_back(std::abs(f.values[i]), f.breakpoints[i + 1] - f.breakpoints[i]);
    StepFunction g;
    if (pieces.empty()) {
        g.breakpoints = {0.0, 1.0};
        g.values = {0.0};
        return g;
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    g.breakpoints.push_back(0.0);
    double t = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        // merge equal levels so breakpoints stay strictly increasing
        double len = pieces[i].second;
        while (i + 1 < pieces.size() && pieces[i + 1].first == pieces[i].first)
            len += pieces[++i].second;
        t += len;
        g.breakpoints.push_back(t);
        g.values.push_back(pieces[i].first);
    }
    return g;
}

double lp_norm(const StepFunction& f, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    double s = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        s += std::pow(std::abs(f.values[i]), p) * (f.breakpoints[i + 1] - f.breakpoints[i]);
    return std::pow(s, 1.0 / p);
}

LorentzNorm lorentz_norm(const StepFunction& f, double p, double q) {
    if (!(p >= 1.0) || !(q >= 1.0))
        throw DomainError("lorentz_norm: need p >= 1 and q >= 1");
    LorentzNorm out;
    out.p = p;
    out.q = q;
    const StepFunction fs = rearrangement(f);

    if (std::isinf(q)) {
        // sup_t t^{1/p} f*(t): on each piece the sup sits at the right end
        double s = 0;
        for (std::size_t i = 0; i < fs.values.size(); ++i)
            s = std::max(s, fs.values[i] * std::pow(fs.breakpoints[i + 1], 1.0 / p));
        out.value = s;
        return out;
    }
    if (std::isinf(p)) {
        out.finite = false;
        out.value = std::numeric_limits<double>::infinity();
        return out;
    }

    // (q/p) int [t^{1/p} f*]^q dt/t = sum v^q (t_hi^{q/p} - t_lo^{q/p})
    double acc = 0;
    const double e = q / p;
    for (std::size_t i = 0; i < fs.values.size(); ++i) {
        const double v = fs.values[i];
        if (v == 0.0) continue;
        acc += std::pow(v, q) *
               (std::pow(fs.breakpoints[i + 1], e) - std::pow(fs.breakpoints[i], e));
    }
    out.value = std::pow(acc, 1.0 / q);
    return out;
}

nlohmann::ordered_json to_json(const StepFunction& f) {
    nlohmann::ordered_json j;
    j["breakpoints"] = f.breakpoints;
    j["values"] = f.values;
    return j;
}

StepFunction step_function_from_json(const nlohmann::json& j) {
    StepFunction f;
    f.breakpoints = j.at("breakpoints").get<std::vector<double>>();
    f.values = j.at("values").get<std::vector<double>>();
    f.validate();
    return f;
}

StepFunction random_step_function(std::uint64_t seed, std::size_t n_pieces, double support_len) {
    if (n_pieces == 0 || !(support_len > 0))
        throw DomainError("random_step_function: bad parameters");
    std::mt19937_64 rng(seed);
    const double tick = std::exp2(-16);
    const std::uint64_t max_tick = std::uint64_t(support_len / tick);
    if (max_tick < 2 * n_pieces + 2)
        throw DomainError("random_step_function: support too short for piece count");

    std::uniform_int_distribution<std::uint64_t> pos(0, max_tick);
    std::vector<std::uint64_t> cuts;
    cuts.reserve(n_pieces + 1);
    while (cuts.size() < n_pieces + 1) {
        const std::uint64_t c = pos(rng);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());

    std::uniform_real_distribution<double> val(-1.0, 1.0);
    StepFunction f;
    f.breakpoints.reserve(cuts.size());
    for (std::uint64_t c : cuts) f.breakpoints.push_back(double(c) * tick);
    f.values.resize(n_pieces);
    for (auto& v : f.values) {
        v = val(rng);
        if (std::abs(v) < 1e-3) v = v < 0 ? -1e-3 : 1e-3; // keep pieces active
    }
    return f;
}

} // namespace acspec
