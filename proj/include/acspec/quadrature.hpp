#ifndef ACSPEC_QUADRATURE_HPP
#define ACSPEC_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "acspec/numutil.hpp"

namespace acspec {

// Adaptive Simpson with absolute tolerance. Throws NumericalError when the
// recursion depth cap is hit before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 48);

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b,
                      double tol, int max_depth = 48);

// Adaptive Simpson over sub-intervals of length <= chunk. Long oscillatory
// ranges can alias the top-level Simpson estimate into early acceptance;
// chunking below the oscillation scale removes that failure mode.
double adaptive_simpson_chunked(const std::function<double(double)>& f, double a, double b,
                                double tol, double chunk = 1.0, int max_depth = 48);

// Fixed-order Gauss-Legendre on [a, b].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int order = 8);
cplx gauss_legendre(const std::function<cplx(double)>& f, double a, double b, int order = 8);

// Cumulative integral of uniformly sampled data: out[i] = integral from x0 to
// x0 + i*h. Fourth-order (cubic) end-corrected scheme; needs >= 4 samples.
std::vector<double> cumulative_uniform(const std::vector<double>& f, double h);
std::vector<cplx> cumulative_uniform(const std::vector<cplx>& f, double h);

} // namespace acspec

#endif
