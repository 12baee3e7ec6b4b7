#include "acspec/decompose.hpp"

#include <algorithm>
#include <cmath>

#include "acspec/quadrature.hpp"

namespace acspec {

namespace {

double glue(double s) { // smooth step 0 -> 1 on [0, 1]
    if (s <= 0) return 0.0;
    if (s >= 1) return 1.0;
    const double h1 = std::exp(-1.0 / s);
    const double h2 = std::exp(-1.0 / (1.0 - s));
    return h1 / (h1 + h2);
}

} // namespace

double smooth_cutoff(double t, double delta) {
    const double a = std::abs(t);
    if (a <= delta) return 0.0;
    if (a >= 2.0 * delta) return 1.0;
    return glue((a - delta) / delta);
}

namespace {

double block_profile(double x, double a_lo, double a_hi, double delta) {
    if (x <= a_lo || x >= a_hi) return 0.0;
    return smooth_cutoff((x - a_lo) / std::sqrt(a_lo), delta) *
           smooth_cutoff((x - a_hi) / std::sqrt(a_hi), delta);
}

} // namespace

double Decomposition::eval_v1(double x) const {
    if (blocks.size() < 2 || x <= blocks.front() || x >= blocks.back()) return 0.0;
    const std::size_t n = block_of(x);
    if (n >= block_constants.size()) return 0.0;
    return block_constants[n] * block_profile(x, blocks[n], blocks[n + 1], delta);
}

double Decomposition::eval_v2(double x) const { return eval_potential(source, x) - eval_v1(x); }

std::size_t Decomposition::block_of(double x) const {
    const auto it = std::upper_bound(blocks.begin(), blocks.end(), x);
    if (it == blocks.begin()) return 0;
    return std::size_t(it - blocks.begin()) - 1;
}

Decomposition decompose_slow_potential(const PotentialSpec& V, double envelope_C,
                                       double envelope_alpha, double delta, double x_max) {
    if (!(envelope_alpha > 0.5))
        throw DomainError("decompose_slow_potential: envelope exponent must exceed 1/2");
    if (!(delta > 0.0 && delta < 0.25))
        throw DomainError("decompose_slow_potential: delta must lie in (0, 1/4)");
    if (!(x_max > 2.0)) throw DomainError("decompose_slow_potential: x_max too small");

    Decomposition dec;
    dec.delta = delta;
    dec.envelope_C = envelope_C;
    dec.envelope_alpha = envelope_alpha;
    dec.source = V;

    dec.blocks.push_back(1.0);
    while (dec.blocks.back() < x_max)
        dec.blocks.push_back(dec.blocks.back() + std::sqrt(dec.blocks.back()));

    const Potential pot(V);
    dec.block_constants.resize(dec.blocks.size() - 1);
    for (std::size_t n = 0; n + 1 < dec.blocks.size(); ++n) {
        const double lo = dec.blocks[n], hi = dec.blocks[n + 1];
        const double width = hi - lo;
        try {
            std::function<double(double)> fv = [&](double t) { return pot(t); };
            std::function<double(double)> fb = [&](double t) {
                return block_profile(t, lo, hi, delta);
            };
            const double tol = 1e-13 * std::max(width, 1.0);
            const double iv = adaptive_simpson_chunked(fv, lo, hi, tol);
            const double ib = adaptive_simpson_chunked(fb, lo, hi, tol);
            if (!(ib > 0))
                throw NumericalError("decompose: degenerate block profile");
            dec.block_constants[n] = iv / ib;
        } catch (const NumericalError& e) {
            throw NumericalError("decompose: block " + std::to_string(n) +
                                 " quadrature failed: " + e.what());
        }
    }
    return dec;
}

std::vector<double> decomposition_grid(const Decomposition& dec, std::size_t per_block) {
    std::vector<double> grid;
    grid.push_back(0.5 * dec.blocks.front());
    for (std::size_t n = 0; n + 1 < dec.blocks.size(); ++n) {
        const double lo = dec.blocks[n], hi = dec.blocks[n + 1];
        const double ramp_lo = 2.2 * dec.delta * std::sqrt(lo);
        const double ramp_hi = 2.2 * dec.delta * std::sqrt(hi);
        // resolve both ramps and the plateau
        const std::size_t third = per_block / 3;
        for (std::size_t i = 0; i < third; ++i)
            grid.push_back(lo + ramp_lo * (double(i) + 0.5) / double(third));
        for (std::size_t i = 0; i < third; ++i)
            grid.push_back(lo + ramp_lo +
                           (hi - ramp_hi - lo - ramp_lo) * (double(i) + 0.5) / double(third));
        for (std::size_t i = 0; i < third; ++i)
            grid.push_back(hi - ramp_hi * (1.0 - (double(i) + 0.5) / double(third)));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

DecompositionReport verify_decomposition(const Decomposition& dec, int m_max,
                                         const std::vector<double>& x_grid, double margin) {
    if (m_max < 0 || m_max > 2)
        throw DomainError("verify_decomposition: m_max must be 0, 1 or 2");
    if (x_grid.size() < 16) throw DomainError("verify_decomposition: grid too small");

    DecompositionReport rep;
    rep.margin = margin;

    const std::size_t nblocks = dec.block_count();
    const Potential pot(dec.source);

    // finite-difference step per block from the local grid spacing
    std::vector<double> block_h(nblocks, 0.0);
    std::vector<std::vector<double>> block_pts(nblocks);
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double x = x_grid[i];
        if (x <= dec.blocks.front() || x >= dec.blocks.back()) continue;
        const std::size_t n = dec.block_of(x);
        if (n >= nblocks) continue;
        block_pts[n].push_back(x);
        if (i > 0 && i + 1 < x_grid.size()) {
            const double sp = 0.5 * (x_grid[i + 1] - x_grid[i - 1]);
            block_h[n] = block_h[n] == 0 ? sp : std::min(block_h[n], sp);
        }
    }
    for (std::size_t n = 0; n < nblocks; ++n) {
        if (block_pts[n].empty()) continue;
        if (block_h[n] == 0) block_h[n] = 0.05 * dec.delta * std::sqrt(dec.blocks[n]);
        if (m_max == 2 && block_h[n] > 0.5 * dec.delta * std::sqrt(dec.blocks[n]))
            throw DomainError("verify_decomposition: grid too coarse for second differences "
                              "near x = " + format_double(dec.blocks[n]));
    }

    // per-block sup of |V1^(m)|, fitted against 1 + block midpoint
    for (int m = 0; m <= m_max; ++m) {
        std::vector<double> mids, sups;
        for (std::size_t n = 0; n < nblocks; ++n) {
            if (block_pts[n].empty()) continue;
            const double h = 0.5 * block_h[n];
            double sup = 0;
            for (double x : block_pts[n]) {
                double d = 0;
                if (m == 0)
                    d = dec.eval_v1(x);
                else if (m == 1)
                    d = (dec.eval_v1(x + h) - dec.eval_v1(x - h)) / (2 * h);
                else
                    d = (dec.eval_v1(x + h) - 2 * dec.eval_v1(x) + dec.eval_v1(x - h)) / (h * h);
                sup = std::max(sup, std::abs(d));
            }
            if (sup > 0) {
                mids.push_back(1.0 + 0.5 * (dec.blocks[n] + dec.blocks[n + 1]));
                sups.push_back(sup);
            }
        }
        if (mids.size() < 4) {
            // identically-zero part: envelope trivially satisfied
            rep.envelope_exponent.push_back(0.0);
            rep.envelope_ok.push_back(true);
            continue;
        }
        const double beta = loglog_fit(mids, sups).slope;
        rep.envelope_exponent.push_back(beta);
        rep.envelope_ok.push_back(beta <= -0.5 * double(m + 1) + margin);
    }

    // block residuals and the V2 tail by block summation: int_x^inf V2 reduces
    // to the within-block remainder because every later block integrates to 0
    std::function<double(double)> v2 = [&](double t) { return dec.eval_v2(t); };
    std::vector<double> tail_mids, tail_sups;
    double worst_rel = 0, tail_sup = 0;
    for (std::size_t n = 0; n < nblocks; ++n) {
        const double lo = dec.blocks[n], hi = dec.blocks[n + 1];
        const double width = hi - lo;
        const double res =
            std::abs(adaptive_simpson_chunked(v2, lo, hi, 1e-13 * std::max(width, 1.0)));
        worst_rel = std::max(worst_rel, res / width);
        if (block_pts[n].empty()) continue;
        double sup = 0;
        for (int s = 1; s <= 4; ++s) {
            const double x = lo + width * double(s) / 5.0;
            const double tail =
                std::abs(adaptive_simpson_chunked(v2, x, hi, 1e-12 * std::max(width, 1.0)));
            sup = std::max(sup, tail);
        }
        tail_sup = std::max(tail_sup, sup);
        if (sup > 0) {
            tail_mids.push_back(1.0 + 0.5 * (lo + hi));
            tail_sups.push_back(sup);
        }
    }
    rep.max_block_residual = worst_rel;
    rep.v2_tail_sup = tail_sup;
    rep.v2_tail_exponent = tail_mids.size() >= 4 ? loglog_fit(tail_mids, tail_sups).slope : 0.0;

    rep.pass = worst_rel < 1e-8;
    for (bool ok : rep.envelope_ok) rep.pass = rep.pass && ok;
    if (!tail_mids.empty()) rep.pass = rep.pass && rep.v2_tail_exponent < 0.0;
    return rep;
}

} // namespace acspec
