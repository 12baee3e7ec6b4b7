#include "acspec/quadrature.hpp"

#include <cmath>

namespace acspec {

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
const double kGL8Nodes[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
const double kGL8Weights[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// 16-point rule for the high order option
const double kGL16Nodes[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
const double kGL16Weights[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename T>
T simpson(double a, double b, T fa, T fm, T fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename T>
T adaptive_step(const std::function<T(double)>& f, double a, double b, T fa, T fm, T fb,
                T whole, double tol, int depth, int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const T flm = f(lm), frm = f(rm);
    const T left = simpson(a, m, fa, flm, fm);
    const T right = simpson(m, b, fm, frm, fb);
    const T delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth >= max_depth)
        throw NumericalError("adaptive_simpson: depth cap reached near x = " + format_double(m));
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

template <typename T>
T adaptive_impl(const std::function<T(double)>& f, double a, double b, double tol, int max_depth) {
    if (a == b) return T{};
    const double m = 0.5 * (a + b);
    const T fa = f(a), fm = f(m), fb = f(b);
    const T whole = simpson(a, b, fa, fm, fb);
    return adaptive_step(f, a, b, fa, fm, fb, whole, tol, 0, max_depth);
}

template <typename T>
T gl_impl(const std::function<T(double)>& f, double a, double b, int order) {
    const double* nodes = order <= 8 ? kGL8Nodes : kGL16Nodes;
    const double* weights = order <= 8 ? kGL8Weights : kGL16Weights;
    const int n = order <= 8 ? 8 : 16;
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    T sum{};
    for (int i = 0; i < n; ++i) sum += weights[i] * f(c + hw * nodes[i]);
    return hw * sum;
}

// Integral over one step [x_i, x_{i+1}] from a cubic through four neighbouring
// samples (Adams-Moulton style weights); one-sided at the ends.
template <typename T>
std::vector<T> cumulative_impl(const std::vector<T>& f, double h) {
    const std::size_t n = f.size();
    if (n < 4) throw DomainError("cumulative_uniform: need >= 4 samples");
    std::vector<T> out(n);
    out[0] = T{};
    out[1] = out[0] + h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    for (std::size_t i = 1; i + 2 < n; ++i)
        out[i + 1] = out[i] + h / 24.0 * (-f[i - 1] + 13.0 * f[i] + 13.0 * f[i + 1] - f[i + 2]);
    out[n - 1] = out[n - 2] +
                 h / 24.0 * (f[n - 4] - 5.0 * f[n - 3] + 19.0 * f[n - 2] + 9.0 * f[n - 1]);
    return out;
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    return adaptive_impl<double>(f, a, b, tol, max_depth);
}

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b,
                      double tol, int max_depth) {
    return adaptive_impl<cplx>(f, a, b, tol, max_depth);
}

double adaptive_simpson_chunked(const std::function<double(double)>& f, double a, double b,
                                double tol, double chunk, int max_depth) {
    if (!(chunk > 0)) throw DomainError("adaptive_simpson_chunked: chunk must be positive");
    if (a == b) return 0.0;
    const std::size_t n = std::size_t(std::ceil((b - a) / chunk));
    const double h = (b - a) / double(n);
    const double tol_piece = tol / double(n);
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i)
        acc += adaptive_impl<double>(f, a + h * double(i), a + h * double(i + 1), tol_piece,
                                     max_depth);
    return acc;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order) {
    return gl_impl<double>(f, a, b, order);
}

cplx gauss_legendre(const std::function<cplx(double)>& f, double a, double b, int order) {
    return gl_impl<cplx>(f, a, b, order);
}

std::vector<double> cumulative_uniform(const std::vector<double>& f, double h) {
    return cumulative_impl<double>(f, h);
}

std::vector<cplx> cumulative_uniform(const std::vector<cplx>& f, double h) {
    return cumulative_impl<cplx>(f, h);
}

} // namespace acspec
