// Test-only oracles: independent computation routes used to freeze expected
// values. Deliberately separate algorithms from the library paths they check.
#ifndef ACSPEC_TESTS_ORACLES_HPP
#define ACSPEC_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace oracles {

using cplx = std::complex<double>;

// Romberg integration (trapezoid + Richardson), independent of the library's
// Simpson/Gauss code paths.
template <typename F>
auto romberg(const F& f, double a, double b, int levels = 16, double tol = 1e-12)
    -> decltype(f(a)) {
    using T = decltype(f(a));
    std::vector<std::vector<T>> R(levels);
    double h = b - a;
    R[0].push_back(0.5 * h * (f(a) + f(b)));
    for (int i = 1; i < levels; ++i) {
        h *= 0.5;
        T s{};
        const long long n = 1LL << (i - 1);
        for (long long k = 0; k < n; ++k) s += f(a + (2.0 * k + 1.0) * h);
        R[i].push_back(0.5 * R[i - 1][0] + h * s);
        for (int j = 1; j <= i; ++j) {
            const double f4 = std::pow(4.0, j);
            R[i].push_back((f4 * R[i][j - 1] - R[i - 1][j - 1]) / (f4 - 1.0));
        }
        if (i > 3 && std::abs(R[i][i] - R[i - 1][i - 1]) < tol * (1.0 + std::abs(R[i][i])))
            return R[i][i];
    }
    return R[levels - 1][levels - 1];
}

// Fixed-step Numerov run of u'' = (W - lambda) u with initial data (u0, du0)
// at 0; returns u(X) and u'(X), the derivative from a five-point one-sided
// stencil on the lattice. Fourth order.
inline std::pair<double, double> numerov_end(const std::function<double(double)>& W,
                                             double lambda, double X, double u0, double du0,
                                             double h) {
    const long long n = std::max<long long>(8, (long long)std::ceil(X / h));
    const double hh = X / double(n);
    const double f0 = W(0.0) - lambda;
    const double f1 = W(hh) - lambda;
    // fourth-order Taylor start (W' by a small difference)
    const double wp = (W(1e-4) - W(0.0)) / 1e-4;
    double tail[5] = {0, 0, 0, 0, 0};
    double um = u0;
    double uc = u0 + hh * du0 + 0.5 * hh * hh * f0 * u0 +
                hh * hh * hh / 6.0 * (wp * u0 + f0 * du0) +
                hh * hh * hh * hh / 24.0 * f0 * f0 * u0;
    tail[3] = um;
    tail[4] = uc;
    double fm = f0, fc = f1;
    for (long long i = 1; i < n; ++i) {
        const double fp = W(hh * double(i + 1)) - lambda;
        const double un = (2.0 * uc * (1.0 + 5.0 * hh * hh * fc / 12.0) -
                           um * (1.0 - hh * hh * fm / 12.0)) /
                          (1.0 - hh * hh * fp / 12.0);
        um = uc;
        uc = un;
        fm = fc;
        fc = fp;
        tail[0] = tail[1];
        tail[1] = tail[2];
        tail[2] = tail[3];
        tail[3] = tail[4];
        tail[4] = uc;
    }
    const double du = (25.0 * tail[4] - 48.0 * tail[3] + 36.0 * tail[2] - 16.0 * tail[1] +
                       3.0 * tail[0]) /
                      (12.0 * hh);
    return {uc, du};
}

// Discriminant (monodromy trace) by Numerov: y2(T) + y1'(T).
inline double numerov_discriminant(const std::function<double(double)>& W, double T,
                                   double lambda, double h = 1e-4) {
    const double y2T = numerov_end(W, lambda, T, 1.0, 0.0, h).first;
    const double y1pT = numerov_end(W, lambda, T, 0.0, 1.0, h).second;
    return y2T + y1pT;
}

// High-accuracy q(x*, lambda) for V = C (1+x)^{-alpha} cos(omega x) against
// the free basis: Romberg on [x*, Y] in chunks plus a twice-integrated-by-
// parts analytic tail beyond Y.
inline cplx oracle_q_free(double C, double alpha, double omega, double lambda, double x_star,
                          double Y = 20000.0) {
    const double rt = std::sqrt(lambda);
    const cplx w(0.0, -2.0 * rt);
    // V(y) e^{-2 i rt y} = (C/2)(1+y)^{-alpha}(e^{i mu1 y} + e^{i mu2 y})
    auto component = [&](double mu) -> cplx {
        auto f = [&](double y) -> cplx {
            return std::pow(1.0 + y, -alpha) * cplx(std::cos(mu * y), std::sin(mu * y));
        };
        cplx acc(0, 0);
        const double chunk = 64.0;
        for (double a = x_star; a < Y; a += chunk)
            acc += romberg(f, a, std::min(a + chunk, Y), 18, 1e-13);
        const cplx imu(0.0, mu);
        const cplx eY(std::cos(mu * Y), std::sin(mu * Y));
        const double gY = std::pow(1.0 + Y, -alpha);
        const double gpY = -alpha * std::pow(1.0 + Y, -alpha - 1.0);
        acc += -gY * eY / imu - gpY * eY / (imu * imu);
        return acc;
    };
    const cplx total = 0.5 * C * (component(omega - 2.0 * rt) + component(-omega - 2.0 * rt));
    return -total / w; // q = -int_x^inf L, L = V conj(theta)^2 / w
}

} // namespace oracles

#endif
