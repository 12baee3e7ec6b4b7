#ifndef ACSPEC_ODE_HPP
#define ACSPEC_ODE_HPP

#include <functional>
#include <string>
#include <vector>

#include "acspec/numutil.hpp"
#include "acspec/parallel.hpp"
#include "acspec/potential.hpp"

namespace acspec {

// Value and derivative of a solution at a point. Kept complex throughout so
// Bloch bases and free exponentials share one code path.
struct State2 {
    cplx u{0.0, 0.0};
    cplx du{0.0, 0.0};
};

inline cplx wronskian(const State2& a, const State2& b) { return a.u * b.du - a.du * b.u; }

struct IntegratorConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_step = 0.5;
    std::vector<double> sample_grid; // output x values; empty = accepted steps
};

struct Trajectory {
    std::vector<double> x;
    std::vector<State2> states;
};

// Integrates -u'' + W u = lambda u from x0 to x1 with the given initial state.
// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) on the first order
// 2-system; output exactly at the sampler grid when one is given.
Trajectory integrate_ivp(const Potential& W, double lambda, double x0, double x1,
                         const State2& init, const IntegratorConfig& cfg);

// Low-level driver: calls observe(x, state) after every accepted step
// (including forced landings on sample points). Returns the terminal state.
State2 integrate_observe(const Potential& W, double lambda, double x0, double x1,
                         const State2& init, const IntegratorConfig& cfg,
                         const std::function<void(double, const State2&)>& observe);

struct TransferMatrix {
    double m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    double x0 = 0, x1 = 0;
    double lambda = 0;
    double det() const { return m11 * m22 - m12 * m21; }
    State2 apply(const State2& s) const {
        return {m11 * s.u + m12 * s.du, m21 * s.u + m22 * s.du};
    }
};

// Propagator of the basis states (1,0) and (0,1) over [x0, x1].
TransferMatrix transfer_matrix(const Potential& W, double lambda, double x0, double x1,
                               const IntegratorConfig& cfg);

// later * earlier, interval composition M(x0, x2) = M(x1, x2) M(x0, x1)
TransferMatrix compose(const TransferMatrix& later, const TransferMatrix& earlier);

struct EnergyGrid {
    std::vector<double> values; // strictly increasing
    std::string label;
};

EnergyGrid make_energy_grid(double lo, double hi, std::size_t n, const std::string& label);

struct GrowthRecord {
    double lambda = 0;
    double growth = 0;    // sup over basis trajectories of max|u| / max_{[0,10]}|u|
    bool flagged = false; // growth exceeded the threshold
    bool failed = false;  // integration failed; error holds the reason
    std::string error;
};

struct BoundednessScan {
    std::vector<GrowthRecord> records;
    double growth_threshold = 0; // X^{1/4} heuristic, recorded not asserted
};

BoundednessScan boundedness_scan(const Potential& W, const EnergyGrid& grid, double X,
                                 const IntegratorConfig& cfg,
                                 par::Mode mode = par::default_mode());

// Trajectory CSV: columns x, Re u, Im u, Re du, Im du
void write_trajectory_csv(const Trajectory& t, const std::string& path);

} // namespace acspec

#endif
