#ifndef ACSPEC_STEPFUN_HPP
#define ACSPEC_STEPFUN_HPP

#include <cstdint>
#include <vector>

#include "acspec/numutil.hpp"

#include "json.hpp"

namespace acspec {

// Piecewise-constant function of compact support: values[i] on
// (breakpoints[i], breakpoints[i+1]), zero outside. Measures, rearrangements
// and Lorentz integrals are all closed-form on this class.
struct StepFunction {
    std::vector<double> breakpoints; // strictly increasing, size = values.size() + 1
    std::vector<double> values;

    double eval(double x) const;
    double support_measure() const;            // m{ x : f(x) != 0 }
    double measure_above(double s) const;      // m{ x : |f(x)| > s }
    double sup_abs() const;
    StepFunction dilated(double c) const;      // x -> f(x / c), c > 0
    void validate() const;                     // throws DomainError when malformed
};

StepFunction make_indicator(double a, double b);

// Non-increasing rearrangement f*(t) = inf{ s : m{|f| > s} <= t }, supported
// on (0, m(supp f)); equimeasurable with |f|.
StepFunction rearrangement(const StepFunction& f);

double lp_norm(const StepFunction& f, double p);

struct LorentzNorm {
    double p = 0, q = 0;
    double value = 0;
    bool finite = true;
};

// ||f||*_{pq} = ( (q/p) int_0^inf [t^{1/p} f*(t)]^q dt/t )^{1/q}, exact
// piecewise closed form; q = inf gives sup_t t^{1/p} f*(t).
LorentzNorm lorentz_norm(const StepFunction& f, double p, double q);

nlohmann::ordered_json to_json(const StepFunction& f);
StepFunction step_function_from_json(const nlohmann::json& j);

// Random test/ensemble instance: n_pieces pieces inside [0, support_len] with
// values in [-1, 1]; endpoints quantized to 2^-16 ticks so measure arithmetic
// is exact in doubles. Deterministic in seed.
StepFunction random_step_function(std::uint64_t seed, std::size_t n_pieces, double support_len);

} // namespace acspec

#endif
