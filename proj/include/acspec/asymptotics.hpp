#ifndef ACSPEC_ASYMPTOTICS_HPP
#define ACSPEC_ASYMPTOTICS_HPP

#include <memory>
#include <vector>

#include "acspec/bloch.hpp"
#include "acspec/ode.hpp"

namespace acspec {

// A uniformly bounded solution pair (theta, conj theta) of the background
// equation at one energy. Free exponentials and Bloch functions share this
// surface so the tail pipeline has one code path.
class SolutionBasis {
public:
    virtual ~SolutionBasis() = default;
    virtual State2 eval(double x) const = 0; // theta, theta'
    virtual cplx wron() const = 0;           // w = theta conj(theta)' - theta' conj(theta)
    virtual double energy() const = 0;
    virtual double sup_theta() const = 0;
    // dominant oscillation rate of conj(theta)^2, for grid resolution
    virtual double max_frequency() const = 0;
};

// theta = e^{i sqrt(lambda) x}; w = -2i sqrt(lambda)
class FreeBasis final : public SolutionBasis {
public:
    explicit FreeBasis(double lambda);
    State2 eval(double x) const override;
    cplx wron() const override { return cplx(0.0, -2.0 * k_); }
    double energy() const override { return lambda_; }
    double sup_theta() const override { return 1.0; }
    double max_frequency() const override { return 2.0 * k_; }

private:
    double lambda_, k_;
};

class BlochBasis final : public SolutionBasis {
public:
    explicit BlochBasis(BlochData bd);
    State2 eval(double x) const override { return bd_.eval(x); }
    cplx wron() const override { return bd_.w; }
    double energy() const override { return bd_.lambda; }
    double sup_theta() const override { return bd_.sup_theta; }
    double max_frequency() const override {
        return 2.0 * (bd_.gamma + 6.0 * M_PI) / bd_.period;
    }
    const BlochData& data() const { return bd_; }

private:
    BlochData bd_;
};

// Coefficients of the transformed 2x2 system on a uniform grid:
// offdiag L = V conj(theta)^2 / w, and V|theta|^2 from which the diagonal
// D = V|theta|^2 / w follows. D is purely imaginary by construction.
struct CoefficientGrid {
    double lambda = 0;
    cplx w;
    double dx = 0;
    std::vector<cplx> offdiag;    // L
    std::vector<double> v_theta2; // V |theta|^2
    double sup_theta = 0;

    std::size_t size() const { return offdiag.size(); }
    double x_at(std::size_t i) const { return dx * double(i); }
    double x_max() const { return dx * double(size() - 1); }
    cplx diag(std::size_t i) const { return v_theta2[i] / w; }
};

struct PipelineConfig {
    double x_max = 32000.0;
    double dx = 0.05;        // shrunk automatically for fast oscillation
    double fit_lo = 100.0;   // decay-fit window
    double fit_hi = 10000.0;
    std::size_t n_probes = 96;
};

CoefficientGrid compute_coefficients(const Potential& V, const SolutionBasis& basis,
                                     const PipelineConfig& cfg);

// Tail integral q(x) = -int_x^inf L (stage one) or of L1 (stage two), with the
// fitted power-law exponent of |q| over the fit window.
struct TailIntegral {
    enum class Stage { first, second } stage = Stage::first;
    std::vector<double> x; // probe points, grid-aligned, geometric
    std::vector<cplx> value;
    double beta = 0;        // fitted decay exponent of |q|
    double beta_stderr = 0;
    double fit_lo = 0, fit_hi = 0;
    bool converged = false;       // stable under halving the truncation point
    double tail_rel_change = 0;   // relative change at the reference probe
};

enum class TailMethod {
    // truncated cumulative with a Richardson-extrapolated limit; robust when
    // the transformed integrand carries a smooth (non-oscillatory) component,
    // as the second stage does through its phase self-interaction
    direct,
    // the x^{1/4}-weighted rewriting; sharp for purely oscillatory tails
    parts
};

TailIntegral q_tail(const CoefficientGrid& coeffs, TailMethod method, const PipelineConfig& cfg);

// Least-squares slope of log|q| against log x over [lo, hi].
// Throws DomainError when fewer than 8 probes fall in the window or a probe
// vanishes (degenerate fit).
struct DecayFit {
    double beta = 0;
    double stderr_ = 0;
    std::size_t points = 0;
};
DecayFit fit_decay_exponent(const TailIntegral& q, double lo, double hi);

// Second transformation stage: L1 = L exp(-(2/w) int_0^x V|theta|^2),
// q1 = -int_x^inf L1, and the accumulated phase int_0^x Im(q1 conj(L1)).
struct SecondStage {
    std::vector<cplx> offdiag1;  // L1 on the same grid; |L1| = |L|
    TailIntegral q1;
    std::vector<double> phase;   // on the uniform grid
    double dx = 0;
};

SecondStage compute_second_stage(const CoefficientGrid& coeffs, TailMethod method,
                                 const PipelineConfig& cfg);

// Predicted asymptotic solution:
//   stage one:  phi = theta exp(-(2/w) int_0^x V|theta|^2)
//   stage two:  additionally times exp(i int_0^x Im(q1 conj(L1)))
// phi' carries theta' with the same exponential factors.
struct Prediction {
    enum class Form { stage1, stage2 } form = Form::stage1;
    std::vector<double> x;
    std::vector<cplx> phi, dphi;
};

Prediction predict(Prediction::Form form, const SolutionBasis& basis,
                   const CoefficientGrid& coeffs, const SecondStage* stage2,
                   const std::vector<double>& x_grid);

// Cumulative size of the residual terms the Levinson step must absorb:
// stage one int |q V|, stage two int |q1|^2 |V|. Report-only.
struct ResidualReport {
    int stage = 1;
    std::vector<double> x;
    std::vector<double> cumulative;
    double last_decade_fraction = 0; // increment over the last decade / total
    bool plateaued = false;
};

ResidualReport residual_integrability(const Potential& V, const CoefficientGrid& coeffs,
                                      const SecondStage* stage2, int stage,
                                      const PipelineConfig& cfg);

} // namespace acspec

#endif
