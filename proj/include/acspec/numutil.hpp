#ifndef ACSPEC_NUMUTIL_HPP
#define ACSPEC_NUMUTIL_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace acspec {

using cplx = std::complex<double>;

// Configuration / input errors. The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Runtime numerical failures (step-size underflow, non-finite state, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Precondition / domain violations (lambda outside band, bad exponent, ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

inline bool is_finite(double x) { return x == x && x - x == 0.0; }
inline bool is_finite(const cplx& z) { return is_finite(z.real()) && is_finite(z.imag()); }

std::vector<double> linspace(double lo, double hi, std::size_t n);
// n geometrically spaced points on [lo, hi], lo > 0
std::vector<double> geomspace(double lo, double hi, std::size_t n);

double median(std::vector<double> v);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double slope_stderr = 0;
};
// least squares y = slope*x + intercept; needs xs.size() >= 2
LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys);

// slope of log|y| vs log x; throws DomainError on non-positive inputs
LineFit loglog_fit(const std::vector<double>& xs, const std::vector<double>& ys);

// splitmix64 step; used to derive independent per-sample RNG seeds
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// fixed-format float for reports (shortest stable form, locale-free)
std::string format_double(double v);

} // namespace acspec

#endif
