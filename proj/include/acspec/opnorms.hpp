#ifndef ACSPEC_OPNORMS_HPP
#define ACSPEC_OPNORMS_HPP

#include <functional>
#include <memory>
#include <vector>

#include "acspec/bloch.hpp"
#include "acspec/parallel.hpp"
#include "acspec/potential.hpp"
#include "acspec/stepfun.hpp"

namespace acspec {

// Kernel A(k, x) of the truncated integral operator (Tf)(k) = int_0^N A f dx.
//   fourier:     e^{-ikx}
//   free_phase:  e^{-ikx} exp((2i/k) int_0^x V)          (k = 2 sqrt(lambda))
//   bloch_kernel: conj(theta)^2 exp(-(2/w) int_0^x V|theta|^2) / w, k = lambda
//   custom:      user callback
struct KernelSpec {
    enum class Kind { fourier, free_phase, bloch_kernel, custom } kind = Kind::fourier;
    double bound = 1.0; // A = sup |A(k,x)|
    double k_lo = 0.0, k_hi = 1.0;
    PotentialSpec V;                                    // free_phase / bloch_kernel
    PotentialSpec U;                                    // bloch_kernel background
    double period = 0.0;                                // bloch_kernel
    std::function<cplx(double, double)> custom;         // custom

    static KernelSpec fourier(double k_lo, double k_hi);
    static KernelSpec free_phase(const PotentialSpec& V, double k_lo, double k_hi);
    static KernelSpec bloch(const PotentialSpec& U, double period, const PotentialSpec& V,
                            double lambda_lo, double lambda_hi);
};

// Compiled kernel: accurate cumulative phase tables, per-energy Bloch data.
class KernelEvaluator {
public:
    KernelEvaluator(KernelSpec spec, double x_max);

    const KernelSpec& spec() const { return spec_; }
    double x_max() const { return x_max_; }

    // int_0^x V (free_phase); table node + local Gauss-Legendre refinement
    double phase_integral(double x) const;

    // builds per-k data (bloch kernels) so row fills are safe to run in parallel
    void prepare(const std::vector<double>& ks);

    cplx eval(double k, double x) const;
    void fill_row(double k, const std::vector<double>& xs, cplx* out) const;

private:
    struct BlochRow {
        double k = 0;
        BlochData bd;
        std::vector<double> cum_vtheta2; // int_0^x V |theta|^2 on a fine grid
        double dx = 0;
    };
    const BlochRow& bloch_row(double k) const;

    KernelSpec spec_;
    double x_max_ = 0;
    double dx_ = 0.25;
    std::vector<double> cum_; // cumulative of V at the table nodes
    Potential pot_;
    Potential bg_;
    std::vector<BlochRow> rows_;
};

// Truncated operator samples (Tf)(k) = int_0^N A(k,x) f(x) dx on a k grid.
// fourier pieces are integrated in closed form; smooth-factor kernels use
// Filon steps (quadratic factor interpolation against the exact exponential).
std::vector<cplx> apply_T(const KernelEvaluator& kernel, const StepFunction& f,
                          const std::vector<double>& k_grid, double N);

// Maximal function Mf(k) = sup_N |(Tf)(k, N)| over the truncation grid; for
// fourier kernels the per-piece supremum is evaluated exactly (circular-arc
// maximum), so the result dominates every truncation point.
std::vector<double> maximal_function(const KernelEvaluator& kernel, const StepFunction& f,
                                     const std::vector<double>& k_grid,
                                     const std::vector<double>& N_grid);

// trapezoid ||g||_q over the k grid
double grid_lq_norm(const std::vector<double>& values, const std::vector<double>& k_grid,
                    double q);

struct L2NormEstimate {
    double value = 0;          // largest singular value at the base resolution
    double value_refined = 0;  // at doubled resolution (when requested)
    double resolution_delta = 0;
    int iterations = 0;
    bool converged = false;
};

// Largest singular value of the discretized kernel on L2(0,X) -> L2(k_lo,k_hi)
// by power iteration on the normal operator. Matrix-free; rows/columns are
// OpenMP kernels with a serial twin selected by mode.
L2NormEstimate estimate_l2_norm(KernelEvaluator& kernel, double X, double x_per_unit,
                                std::size_t n_k, par::Mode mode = par::default_mode(),
                                bool resolution_check = true, int max_iter = 300);

struct SymbolClassReport {
    double fit_dx = 0, fit_dk = 0, fit_mixed = 0; // fitted envelope exponents
    double rho = 0, sigma = 0, margin = 0;
    bool pass = false;
    bool resolution_warning = false; // finite differences near the noise floor
};

// Fitted growth/decay envelopes of d_x a, d_k a, d^2_{xk} a on a log-x grid
// (orders 0/1 only); pass iff the three fits respect (rho, sigma) + margin.
SymbolClassReport check_symbol_class(const std::function<cplx(double, double)>& symbol,
                                     double k_lo, double k_hi, double rho, double sigma,
                                     double margin, double x_lo = 1.0, double x_hi = 1000.0,
                                     std::size_t n_x = 24, std::size_t n_k = 12);

// a(k, x) = exp((2i/k) int_0^x V) of the free-phase reduction
std::function<cplx(double, double)> make_free_phase_symbol(const PotentialSpec& V, double x_max);

struct MaximalExperimentRow {
    int support_pow = 0; // support length 2^pow
    int ensemble_idx = 0;
    double ratio = 0; // ||Mf||_q / ||f||_{pq}
};

struct MaximalExperimentReport {
    std::vector<MaximalExperimentRow> rows;
    double baseline = 0;  // ratio for f = chi(0,1)
    double max_ratio = 0;
    double growth_slope = 0; // fitted log(max ratio per support) vs log(support)
    bool pass = false;       // max_ratio <= 3 * baseline
};

// Ensembles of random step functions at growing support, testing that the
// maximal-function bound constant does not grow with support size.
MaximalExperimentReport maximal_bound_experiment(const KernelEvaluator& kernel, double p,
                                                 double q, std::size_t ensemble,
                                                 const std::vector<int>& support_powers,
                                                 std::uint64_t seed, std::size_t n_k = 160,
                                                 par::Mode mode = par::default_mode());

void write_maximal_csv(const MaximalExperimentReport& r, const std::string& path);

} // namespace acspec

#endif
