#include "acspec/numutil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace acspec {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double h = (hi - lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + h * double(i);
    out.back() = hi;
    return out;
}

std::vector<double> geomspace(double lo, double hi, std::size_t n) {
    if (lo <= 0 || hi <= 0) throw DomainError("geomspace: endpoints must be positive");
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double r = std::log(hi / lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(r * double(i));
    out.back() = hi;
    return out;
}

double median(std::vector<double> v) {
    if (v.empty()) throw DomainError("median of empty vector");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw DomainError("least_squares: need >= 2 matching points");
    const double n = double(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) { sx += xs[i]; sy += ys[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0) throw DomainError("least_squares: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (xs.size() > 2) {
        double ss = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
            ss += r * r;
        }
        fit.slope_stderr = std::sqrt(ss / (n - 2.0) / sxx);
    }
    return fit;
}

LineFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0) throw DomainError("loglog_fit: non-positive abscissa");
        if (ys[i] <= 0) throw DomainError("loglog_fit: non-positive ordinate");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    return least_squares(lx, ly);
}

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t s = base + 0x632be59bd9b4e019ULL * (index + 1);
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
}

} // namespace acspec
