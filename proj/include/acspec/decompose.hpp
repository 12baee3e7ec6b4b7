#ifndef ACSPEC_DECOMPOSE_HPP
#define ACSPEC_DECOMPOSE_HPP

#include <vector>

#include "acspec/potential.hpp"

namespace acspec {

// Smooth cutoff: 0 on (-delta, delta), 1 outside (-2 delta, 2 delta),
// exp(-1/t) glue in between.
double smooth_cutoff(double t, double delta);

// Constructive splitting V = V1 + V2 of a slowly decaying potential:
// blocks a_0 = 1, a_{n+1} = a_n + sqrt(a_n); V1 is the block-wise plateau
// C_n chi(a_n, a_{n+1}) xi((x-a_n)/sqrt(a_n)) xi((x-a_{n+1})/sqrt(a_{n+1}))
// with C_n chosen so every block integral of V - V1 vanishes. V2 = V - V1
// then has uniformly bounded partial integrals.
struct Decomposition {
    std::vector<double> blocks;          // a_0, a_1, ..., covers [1, x_max]
    std::vector<double> block_constants; // C_n for block (a_n, a_{n+1})
    double delta = 0.1;
    double envelope_C = 0, envelope_alpha = 0;
    PotentialSpec source;

    double eval_v1(double x) const;
    double eval_v2(double x) const; // V(x) - V1(x)
    std::size_t block_of(double x) const;
    std::size_t block_count() const { return block_constants.size(); }
};

Decomposition decompose_slow_potential(const PotentialSpec& V, double envelope_C,
                                       double envelope_alpha, double delta, double x_max);

struct DecompositionReport {
    std::vector<double> envelope_exponent; // fitted, index m = 0..m_max
    std::vector<bool> envelope_ok;         // exponent <= -(m+1)/2 + margin
    double margin = 0;
    double max_block_residual = 0; // max_n |int_block (V - V1)| / block width
    double v2_tail_sup = 0;        // sup over probes of |int_x^inf V2|
    double v2_tail_exponent = 0;   // fitted exponent of the per-block tail sups
    bool pass = false;
};

// Fitted envelope exponents of V1^(m) (centered finite differences, step from
// the local grid spacing) and the tail of V2 by block summation.
DecompositionReport verify_decomposition(const Decomposition& dec, int m_max,
                                         const std::vector<double>& x_grid,
                                         double margin = 0.05);

// Grid suited to verify_decomposition: per-block points with the cutoff ramps
// resolved (the sup of V1 derivatives lives on the ramps).
std::vector<double> decomposition_grid(const Decomposition& dec, std::size_t per_block = 48);

} // namespace acspec

#endif
