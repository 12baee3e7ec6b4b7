#include "acspec/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "acspec/quadrature.hpp"

namespace acspec {

FreeBasis::FreeBasis(double lambda) : lambda_(lambda), k_(std::sqrt(lambda)) {
    if (lambda <= 0) throw DomainError("FreeBasis: lambda must be positive");
}

State2 FreeBasis::eval(double x) const {
    const cplx e(std::cos(k_ * x), std::sin(k_ * x));
    return State2{e, cplx(0.0, k_) * e};
}

BlochBasis::BlochBasis(BlochData bd) : bd_(std::move(bd)) {}

CoefficientGrid compute_coefficients(const Potential& V, const SolutionBasis& basis,
                                     const PipelineConfig& cfg) {
    const cplx w = basis.wron();
    if (std::abs(w) < 1e-12)
        throw DomainError("compute_coefficients: Wronskian vanishes (band edge)");
    if (cfg.x_max <= 1.0 || cfg.dx <= 0) throw ConfigError("pipeline: bad grid parameters");

    // resolve the fastest oscillation of conj(theta)^2 and V
    const double omega = basis.max_frequency() + 2.0;
    const double dx = std::min(cfg.dx, 2.0 * M_PI / (32.0 * omega));
    const std::size_t n = std::size_t(std::ceil(cfg.x_max / dx)) + 1;

    CoefficientGrid c;
    c.lambda = basis.energy();
    c.w = w;
    c.dx = dx;
    c.sup_theta = basis.sup_theta();
    c.offdiag.resize(n);
    c.v_theta2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = dx * double(i);
        const State2 th = basis.eval(x);
        const double v = V(x);
        const cplx tbar = std::conj(th.u);
        c.offdiag[i] = v * tbar * tbar / w;
        c.v_theta2[i] = v * std::norm(th.u);
    }
    return c;
}

namespace {

struct TailArrays {
    std::vector<cplx> q; // on the full uniform grid
};

// Limit of a slowly settling cumulative: three dyadic window means with a
// geometric (Richardson-style) extrapolation of whatever monotone creep is
// left after the oscillation averages out. Componentwise with guards.
cplx dyadic_limit(const std::vector<cplx>& F) {
    const std::size_t n = F.size();
    auto mean = [&](std::size_t lo, std::size_t hi) {
        cplx s(0, 0);
        for (std::size_t i = lo; i < hi; ++i) s += F[i];
        return s / double(hi - lo);
    };
    const cplx m0 = mean(n / 2, n), m1 = mean(n / 4, n / 2), m2 = mean(n / 8, n / 4);
    auto extrap = [](double a0, double a1, double a2) {
        const double d1 = a1 - a0, d2 = a2 - a1;
        if (d1 * d2 <= 0 || std::abs(d2) < 1e-300) return a0;
        const double rho = d1 / d2;
        if (rho <= 0.0 || rho >= 0.97) return a0;
        return a0 - d1 * rho / (1.0 - rho);
    };
    return cplx(extrap(m0.real(), m1.real(), m2.real()),
                extrap(m0.imag(), m1.imag(), m2.imag()));
}

// q(x) = -int_x^inf ell over a uniform grid [0, n*dx], truncated at the top.
// parts: the x^{1/4}-weighted integration-by-parts form, anchored directly
// below x = 4. direct: plain truncation with the extrapolated cumulative limit.
TailArrays tail_on_grid(const std::vector<cplx>& ell, double dx, TailMethod method) {
    const std::size_t n = ell.size();
    if (n < 64) throw DomainError("tail_on_grid: grid too short");
    TailArrays out;
    const std::vector<cplx> H = cumulative_uniform(ell, dx);

    out.q.resize(n);
    if (method == TailMethod::direct) {
        const cplx h_inf = dyadic_limit(H);
        for (std::size_t i = 0; i < n; ++i) out.q[i] = H[i] - h_inf;
        return out;
    }

    // F(y) = int_0^y ell(t) t^{1/4} dt
    std::vector<cplx> weighted(n);
    for (std::size_t i = 0; i < n; ++i)
        weighted[i] = ell[i] * std::pow(dx * double(i), 0.25);
    const std::vector<cplx> F = cumulative_uniform(weighted, dx);
    cplx f_inf(0, 0);
    for (std::size_t i = n / 2; i < n; ++i) f_inf += F[i];
    f_inf /= double(n - n / 2);

    // correction integrand y^{-5/4} (F - F_inf), zeroed below the anchor zone
    const double x_cut = 0.5;
    std::vector<cplx> g(n, cplx(0, 0));
    for (std::size_t i = 0; i < n; ++i) {
        const double x = dx * double(i);
        if (x >= x_cut) g[i] = std::pow(x, -1.25) * (F[i] - f_inf);
    }
    const std::vector<cplx> G = cumulative_uniform(g, dx);

    const double x_anchor = 4.0;
    const std::size_t ia = std::min(std::size_t(std::ceil(x_anchor / dx)), n - 1);
    for (std::size_t i = ia; i < n; ++i) {
        const double x = dx * double(i);
        out.q[i] = std::pow(x, -0.25) * (F[i] - f_inf) - 0.25 * (G[n - 1] - G[i]);
    }
    // below the anchor: exact relation q(x) = q(a) - (H(a) - H(x))
    for (std::size_t i = 0; i < ia; ++i) out.q[i] = out.q[ia] - (H[ia] - H[i]);
    return out;
}

std::vector<std::size_t> probe_indices(std::size_t n, double dx, std::size_t n_probes) {
    const double lo = std::max(1.0, 8.0 * dx);
    const double hi = dx * double(n - 1);
    std::vector<std::size_t> idx;
    for (double x : geomspace(lo, hi, n_probes)) {
        std::size_t i = std::size_t(std::llround(x / dx));
        i = std::min(i, n - 1);
        if (idx.empty() || i > idx.back()) idx.push_back(i);
    }
    return idx;
}

TailIntegral build_tail(const std::vector<cplx>& ell, double dx, TailMethod method,
                        const PipelineConfig& cfg, TailIntegral::Stage stage,
                        std::vector<cplx>* q_grid_out) {
    const std::size_t n = ell.size();
    const TailArrays full = tail_on_grid(ell, dx, method);

    // stability of the value under halving the truncation point
    const std::vector<cplx> half_ell(ell.begin(), ell.begin() + n / 2);
    const TailArrays half = tail_on_grid(half_ell, dx, method);
    const double x_ref = std::sqrt(std::max(cfg.fit_lo, 1.0) * std::max(cfg.fit_hi, 2.0));
    std::size_t ref = std::size_t(std::llround(x_ref / dx));
    ref = std::min(ref, n / 2 - 2);
    const double denom = std::max(std::abs(full.q[ref]), 1e-300);
    const double rel = std::abs(full.q[ref] - half.q[ref]) / denom;

    TailIntegral t;
    t.stage = stage;
    t.tail_rel_change = rel;
    t.converged = rel < 0.05;
    t.fit_lo = cfg.fit_lo;
    t.fit_hi = cfg.fit_hi;

    for (std::size_t i : probe_indices(n, dx, cfg.n_probes)) {
        t.x.push_back(dx * double(i));
        t.value.push_back(full.q[i]);
    }
    try {
        const DecayFit fit = fit_decay_exponent(t, cfg.fit_lo, cfg.fit_hi);
        t.beta = fit.beta;
        t.beta_stderr = fit.stderr_;
    } catch (const DomainError&) {
        t.beta = 0; // identically-zero tails and the like
    }
    if (q_grid_out) *q_grid_out = std::move(full.q);
    return t;
}

// cubic Hermite on cumulative data with known integrand (= derivative) samples
double hermite_cumulative(const std::vector<double>& cum, const std::vector<double>& der,
                          double dx, double x) {
    const std::size_t n = cum.size();
    double pos = x / dx;
    if (pos <= 0) return cum.front();
    if (pos >= double(n - 1)) return cum.back();
    const std::size_t j = std::size_t(pos);
    const double t = pos - double(j);
    const double h00 = (2 * t - 3) * t * t + 1;
    const double h10 = ((t - 2) * t + 1) * t;
    const double h01 = (3 - 2 * t) * t * t;
    const double h11 = (t - 1) * t * t;
    return h00 * cum[j] + h10 * dx * der[j] + h01 * cum[j + 1] + h11 * dx * der[j + 1];
}

} // namespace

TailIntegral q_tail(const CoefficientGrid& coeffs, TailMethod method, const PipelineConfig& cfg) {
    return build_tail(coeffs.offdiag, coeffs.dx, method, cfg, TailIntegral::Stage::first, nullptr);
}

DecayFit fit_decay_exponent(const TailIntegral& q, double lo, double hi) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < q.x.size(); ++i) {
        if (q.x[i] < lo || q.x[i] > hi) continue;
        const double a = std::abs(q.value[i]);
        if (a == 0.0) throw DomainError("fit_decay_exponent: zero sample in window");
        xs.push_back(q.x[i]);
        ys.push_back(a);
    }
    if (xs.size() < 8) throw DomainError("fit_decay_exponent: need >= 8 samples in window");
    const LineFit f = loglog_fit(xs, ys);
    DecayFit out;
    out.beta = f.slope;
    out.stderr_ = f.slope_stderr;
    out.points = xs.size();
    return out;
}

SecondStage compute_second_stage(const CoefficientGrid& coeffs, TailMethod method,
                                 const PipelineConfig& cfg) {
    const std::size_t n = coeffs.size();
    SecondStage s;
    s.dx = coeffs.dx;

    const std::vector<double> P = cumulative_uniform(coeffs.v_theta2, coeffs.dx);
    const cplx factor = -2.0 / coeffs.w; // purely imaginary under the sign convention
    s.offdiag1.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        s.offdiag1[i] = coeffs.offdiag[i] * std::exp(factor * P[i]);

    std::vector<cplx> q1_grid;
    s.q1 = build_tail(s.offdiag1, coeffs.dx, method, cfg, TailIntegral::Stage::second, &q1_grid);

    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i)
        integrand[i] = std::imag(q1_grid[i] * std::conj(s.offdiag1[i]));
    s.phase = cumulative_uniform(integrand, coeffs.dx);
    return s;
}

Prediction predict(Prediction::Form form, const SolutionBasis& basis,
                   const CoefficientGrid& coeffs, const SecondStage* stage2,
                   const std::vector<double>& x_grid) {
    if (form == Prediction::Form::stage2 && stage2 == nullptr)
        throw DomainError("predict: stage-two prediction needs SecondStage data");
    if (!x_grid.empty() && x_grid.back() > coeffs.x_max() + coeffs.dx)
        throw DomainError("predict: x grid extends past the coefficient grid");

    const std::vector<double> P = cumulative_uniform(coeffs.v_theta2, coeffs.dx);
    std::vector<double> phase_der;
    if (form == Prediction::Form::stage2) {
        if (stage2->phase.size() != coeffs.size() || stage2->dx != coeffs.dx)
            throw DomainError("predict: stage-two grid misaligned with coefficients");
        phase_der.resize(coeffs.size());
        for (std::size_t i = 0; i + 1 < coeffs.size(); ++i)
            phase_der[i] = (stage2->phase[i + 1] - stage2->phase[i]) / coeffs.dx;
        phase_der.back() = phase_der[coeffs.size() - 2];
    }

    Prediction p;
    p.form = form;
    p.x = x_grid;
    p.phi.resize(x_grid.size());
    p.dphi.resize(x_grid.size());
    const cplx efac = -2.0 / coeffs.w;
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        const double x = x_grid[i];
        cplx expo = efac * hermite_cumulative(P, coeffs.v_theta2, coeffs.dx, x);
        if (form == Prediction::Form::stage2)
            expo += cplx(0.0, hermite_cumulative(stage2->phase, phase_der, stage2->dx, x));
        const cplx amp = std::exp(expo);
        const State2 th = basis.eval(x);
        p.phi[i] = th.u * amp;
        p.dphi[i] = th.du * amp;
    }
    return p;
}

ResidualReport residual_integrability(const Potential& V, const CoefficientGrid& coeffs,
                                      const SecondStage* stage2, int stage,
                                      const PipelineConfig& cfg) {
    if (stage != 1 && stage != 2) throw DomainError("residual_integrability: stage must be 1 or 2");
    if (stage == 2 && stage2 == nullptr)
        throw DomainError("residual_integrability: stage two needs SecondStage data");

    const std::size_t n = coeffs.size();
    std::vector<cplx> q_grid =
        stage == 1 ? tail_on_grid(coeffs.offdiag, coeffs.dx, TailMethod::parts).q
                   : tail_on_grid(stage2->offdiag1, coeffs.dx, TailMethod::parts).q;

    std::vector<double> integrand(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double av = std::abs(V(coeffs.x_at(i)));
        const double aq = std::abs(q_grid[i]);
        integrand[i] = stage == 1 ? aq * av : aq * aq * av;
    }
    const std::vector<double> C = cumulative_uniform(integrand, coeffs.dx);

    ResidualReport r;
    r.stage = stage;
    for (std::size_t i : probe_indices(n, coeffs.dx, cfg.n_probes)) {
        r.x.push_back(coeffs.x_at(i));
        r.cumulative.push_back(C[i]);
    }
    const double total = C[n - 1];
    if (total > 0) {
        // increment over the top decade [x_max/10, x_max]
        const std::size_t idec = (n - 1) / 10;
        r.last_decade_fraction = (total - C[idec]) / total;
        r.plateaued = r.last_decade_fraction < 0.10;
    } else {
        r.plateaued = true;
    }
    return r;
}

} // namespace acspec
