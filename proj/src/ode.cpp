#include "acspec/ode.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace acspec {

namespace {

struct Vec2 {
    cplx a, b;
};

inline Vec2 operator+(const Vec2& x, const Vec2& y) { return {x.a + y.a, x.b + y.b}; }
inline Vec2 operator*(double s, const Vec2& x) { return {s * x.a, s * x.b}; }

// Dormand-Prince 5(4) coefficients
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

} // namespace

State2 integrate_observe(const Potential& W, double lambda, double x0, double x1,
                         const State2& init, const IntegratorConfig& cfg,
                         const std::function<void(double, const State2&)>& observe) {
    if (cfg.rtol <= 0 || cfg.atol <= 0) throw ConfigError("integrator tolerances must be positive");
    if (x1 < x0) throw DomainError("integrate: x1 < x0");
    if (!is_finite(init.u) || !is_finite(init.du))
        throw DomainError("integrate: non-finite initial state");

    Vec2 y{init.u, init.du};
    double x = x0;
    if (x1 == x0) return init;

    auto rhs = [&](double xx, const Vec2& v) -> Vec2 {
        return {v.b, (W(xx) - lambda) * v.a};
    };

    // pending forced sample points inside (x0, x1]
    std::size_t next_sample = 0;
    const auto& grid = cfg.sample_grid;
    while (next_sample < grid.size() && grid[next_sample] <= x0) ++next_sample;

    Vec2 k1 = rhs(x, y);
    double h = std::min(cfg.max_step, std::min(x1 - x0, 1e-2));
    double err_prev = 1.0;
    const double hmin_floor = 1e-13;

    while (x < x1) {
        double target = x1;
        if (next_sample < grid.size()) target = std::min(target, grid[next_sample]);
        bool hit_target = false;
        if (x + h >= target - 1e-14 * (1.0 + std::abs(target))) {
            h = target - x;
            hit_target = true;
        }
        if (h <= hmin_floor * (1.0 + std::abs(x)))
            throw NumericalError("integrate: step size underflow at x = " + format_double(x));

        const Vec2 k2 = rhs(x + c2 * h, y + h * (a21 * k1));
        const Vec2 k3 = rhs(x + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const Vec2 k4 = rhs(x + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec2 k5 = rhs(x + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec2 k6 = rhs(x + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vec2 ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec2 k7 = rhs(x + h, ynew);
        const Vec2 ev = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double sc_a = cfg.atol + cfg.rtol * std::max(std::abs(y.a), std::abs(ynew.a));
        const double sc_b = cfg.atol + cfg.rtol * std::max(std::abs(y.b), std::abs(ynew.b));
        const double err = std::sqrt(0.5 * (std::norm(ev.a / sc_a) + std::norm(ev.b / sc_b)));

        if (!is_finite(ynew.a) || !is_finite(ynew.b) || !is_finite(err))
            throw NumericalError("integrate: non-finite state at x = " + format_double(x));

        if (err <= 1.0) {
            x = x + h;
            y = ynew;
            k1 = k7; // FSAL
            observe(x, State2{y.a, y.b});
            if (hit_target && next_sample < grid.size() &&
                std::abs(x - grid[next_sample]) <= 1e-12 * (1.0 + std::abs(x)))
                ++next_sample;
            // PI-flavoured growth with clamps
            const double fac =
                0.9 * std::pow(std::max(err, 1e-10), -0.2) * std::pow(err_prev, 0.04);
            h = h * std::clamp(fac, 0.2, 6.0);
            h = std::min(h, cfg.max_step);
            err_prev = std::max(err, 1e-10);
        } else {
            h = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    return State2{y.a, y.b};
}

Trajectory integrate_ivp(const Potential& W, double lambda, double x0, double x1,
                         const State2& init, const IntegratorConfig& cfg) {
    Trajectory t;
    const bool gridded = !cfg.sample_grid.empty();
    t.x.push_back(x0);
    t.states.push_back(init);
    integrate_observe(W, lambda, x0, x1, init, cfg, [&](double x, const State2& s) {
        if (gridded) {
            // keep only forced grid landings (and the endpoint)
            const auto& g = cfg.sample_grid;
            auto it = std::lower_bound(g.begin(), g.end(), x - 1e-12 * (1.0 + std::abs(x)));
            const bool on_grid =
                it != g.end() && std::abs(*it - x) <= 1e-12 * (1.0 + std::abs(x));
            if (!on_grid && x != x1) return;
        }
        t.x.push_back(x);
        t.states.push_back(s);
    });
    return t;
}

TransferMatrix transfer_matrix(const Potential& W, double lambda, double x0, double x1,
                               const IntegratorConfig& cfg) {
    TransferMatrix m;
    m.x0 = x0;
    m.x1 = x1;
    m.lambda = lambda;
    if (x0 == x1) return m;
    IntegratorConfig c = cfg;
    c.sample_grid.clear();
    auto noop = [](double, const State2&) {};
    const State2 col1 = integrate_observe(W, lambda, x0, x1, State2{1.0, 0.0}, c, noop);
    const State2 col2 = integrate_observe(W, lambda, x0, x1, State2{0.0, 1.0}, c, noop);
    m.m11 = col1.u.real();
    m.m21 = col1.du.real();
    m.m12 = col2.u.real();
    m.m22 = col2.du.real();
    if (!is_finite(m.m11) || !is_finite(m.m12) || !is_finite(m.m21) || !is_finite(m.m22))
        throw NumericalError("transfer_matrix: non-finite entries");
    return m;
}

TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier) {
    TransferMatrix m;
    m.x0 = earlier.x0;
    m.x1 = later.x1;
    m.lambda = earlier.lambda;
    m.m11 = later.m11 * earlier.m11 + later.m12 * earlier.m21;
    m.m12 = later.m11 * earlier.m12 + later.m12 * earlier.m22;
    m.m21 = later.m21 * earlier.m11 + later.m22 * earlier.m21;
    m.m22 = later.m21 * earlier.m12 + later.m22 * earlier.m22;
    return m;
}

EnergyGrid make_energy_grid(double lo, double hi, std::size_t n, const std::string& label) {
    if (!(lo < hi) || n == 0) throw ConfigError("energy grid needs lo < hi and n > 0");
    EnergyGrid g;
    g.label = label;
    g.values.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g.values[i] = lo + (hi - lo) * (double(i) + 0.5) / double(n);
    return g;
}

BoundednessScan boundedness_scan(const Potential& W, const EnergyGrid& grid, double X,
                                 const IntegratorConfig& cfg, par::Mode mode) {
    if (X < 100.0) throw DomainError("boundedness_scan: X must be >= 100");
    if (!std::is_sorted(grid.values.begin(), grid.values.end()))
        throw DomainError("boundedness_scan: energy grid must be sorted");

    BoundednessScan scan;
    scan.growth_threshold = std::pow(X, 0.25);
    scan.records.resize(grid.values.size());

    IntegratorConfig c = cfg;
    c.sample_grid = {10.0}; // force a landing at the head window edge

    par::parallel_for(grid.values.size(), mode, [&](std::size_t i) {
        GrowthRecord rec;
        rec.lambda = grid.values[i];
        try {
            double g = 0.0;
            const State2 inits[2] = {State2{1.0, 0.0}, State2{0.0, 1.0}};
            for (const auto& init : inits) {
                double max_head = std::abs(init.u), max_all = std::abs(init.u);
                integrate_observe(W, rec.lambda, 0.0, X, init, c,
                                  [&](double x, const State2& s) {
                                      const double au = std::abs(s.u);
                                      if (x <= 10.0) max_head = std::max(max_head, au);
                                      max_all = std::max(max_all, au);
                                  });
                if (max_head > 0) g = std::max(g, max_all / max_head);
            }
            rec.growth = g;
            rec.flagged = g > scan.growth_threshold;
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
        }
        scan.records[i] = rec;
    });
    return scan;
}

void write_trajectory_csv(const Trajectory& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << "x,re_u,im_u,re_du,im_du\n";
    for (std::size_t i = 0; i < t.x.size(); ++i)
        out << format_double(t.x[i]) << ',' << format_double(t.states[i].u.real()) << ','
            << format_double(t.states[i].u.imag()) << ',' << format_double(t.states[i].du.real())
            << ',' << format_double(t.states[i].du.imag()) << '\n';
}

} // namespace acspec
