#include "acspec/opnorms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "acspec/quadrature.hpp"

namespace acspec {

KernelSpec KernelSpec::fourier(double k_lo, double k_hi) {
    if (!(k_lo < k_hi)) throw ConfigError("kernel window needs k_lo < k_hi");
    KernelSpec s;
    s.kind = Kind::fourier;
    s.bound = 1.0;
    s.k_lo = k_lo;
    s.k_hi = k_hi;
    return s;
}

KernelSpec KernelSpec::free_phase(const PotentialSpec& V, double k_lo, double k_hi) {
    if (!(0 < k_lo && k_lo < k_hi)) throw ConfigError("free_phase kernel needs 0 < k_lo < k_hi");
    KernelSpec s;
    s.kind = Kind::free_phase;
    s.bound = 1.0;
    s.k_lo = k_lo;
    s.k_hi = k_hi;
    s.V = V;
    return s;
}

KernelSpec KernelSpec::bloch(const PotentialSpec& U, double period, const PotentialSpec& V,
                             double lambda_lo, double lambda_hi) {
    if (!(lambda_lo < lambda_hi)) throw ConfigError("kernel window needs k_lo < k_hi");
    KernelSpec s;
    s.kind = Kind::bloch_kernel;
    s.k_lo = lambda_lo;
    s.k_hi = lambda_hi;
    s.U = U;
    s.period = period;
    s.V = V;
    return s;
}

KernelEvaluator::KernelEvaluator(KernelSpec spec, double x_max)
    : spec_(std::move(spec)), x_max_(x_max) {
    if (!(x_max > 0)) throw ConfigError("KernelEvaluator: x_max must be positive");
    if (spec_.kind == KernelSpec::Kind::free_phase || spec_.kind == KernelSpec::Kind::bloch_kernel)
        pot_ = Potential(spec_.V);
    if (spec_.kind == KernelSpec::Kind::bloch_kernel) bg_ = Potential(spec_.U);
    if (spec_.kind == KernelSpec::Kind::free_phase) {
        const std::size_t n = std::size_t(std::ceil(x_max / dx_)) + 2;
        cum_.resize(n);
        cum_[0] = 0;
        std::function<double(double)> f = [this](double t) { return pot_(t); };
        for (std::size_t j = 1; j < n; ++j)
            cum_[j] = cum_[j - 1] + gauss_legendre(f, dx_ * double(j - 1), dx_ * double(j), 8);
    }
}

double KernelEvaluator::phase_integral(double x) const {
    if (spec_.kind != KernelSpec::Kind::free_phase)
        throw DomainError("phase_integral: kernel has no free phase");
    if (x <= 0) return 0.0;
    if (x > x_max_ + dx_)
        throw DomainError("phase_integral: x = " + format_double(x) +
                          " beyond the kernel domain");
    std::size_t j = std::size_t(x / dx_);
    j = std::min(j, cum_.size() - 2);
    std::function<double(double)> f = [this](double t) { return pot_(t); };
    return cum_[j] + gauss_legendre(f, dx_ * double(j), x, 8);
}

void KernelEvaluator::prepare(const std::vector<double>& ks) {
    if (spec_.kind != KernelSpec::Kind::bloch_kernel) return;
    IntegratorConfig cfg;
    cfg.rtol = 1e-10;
    cfg.atol = 1e-12;
    for (double k : ks) {
        bool have = false;
        for (const auto& r : rows_)
            if (r.k == k) { have = true; break; }
        if (have) continue;
        BlochRow row;
        row.k = k;
        row.bd = bloch_function(bg_, spec_.period, k, cfg, 1024);
        row.dx = 0.05;
        const std::size_t n = std::size_t(std::ceil(x_max_ / row.dx)) + 2;
        std::vector<double> integrand(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double x = row.dx * double(j);
            integrand[j] = pot_(x) * std::norm(row.bd.eval(x).u);
        }
        row.cum_vtheta2 = cumulative_uniform(integrand, row.dx);
        rows_.push_back(std::move(row));
    }
}

const KernelEvaluator::BlochRow& KernelEvaluator::bloch_row(double k) const {
    for (const auto& r : rows_)
        if (r.k == k) return r;
    throw DomainError("bloch kernel: energy not prepared: k = " + format_double(k));
}

cplx KernelEvaluator::eval(double k, double x) const {
    switch (spec_.kind) {
        case KernelSpec::Kind::fourier:
            return cplx(std::cos(k * x), -std::sin(k * x));
        case KernelSpec::Kind::free_phase: {
            if (k == 0) throw DomainError("free_phase kernel: k = 0");
            const double ang = -k * x + 2.0 * phase_integral(x) / k;
            return cplx(std::cos(ang), std::sin(ang));
        }
        case KernelSpec::Kind::bloch_kernel: {
            const BlochRow& r = bloch_row(k);
            const State2 th = r.bd.eval(x);
            std::size_t j = std::min(std::size_t(x / r.dx), r.cum_vtheta2.size() - 2);
            const double t = x / r.dx - double(j);
            const double P = (1 - t) * r.cum_vtheta2[j] + t * r.cum_vtheta2[j + 1];
            const cplx tbar = std::conj(th.u);
            return tbar * tbar * std::exp(-2.0 / r.bd.w * P) / r.bd.w;
        }
        case KernelSpec::Kind::custom:
            return spec_.custom(k, x);
    }
    throw ConfigError("unknown kernel kind");
}

void KernelEvaluator::fill_row(double k, const std::vector<double>& xs, cplx* out) const {
    for (std::size_t j = 0; j < xs.size(); ++j) out[j] = eval(k, xs[j]);
}

namespace {

// moments int_0^h t^m e^{-ikt} dt, m = 0, 1, 2
void kernel_moments(double k, double h, cplx M[3]) {
    const double kh = k * h;
    if (std::abs(kh) < 0.5) {
        for (int m = 0; m < 3; ++m) {
            cplx term(std::pow(h, m + 1) / (m + 1), 0);
            cplx acc = term;
            cplx ikh(0, -k); // (-ik) factor accumulates with h powers
            cplx pw(1, 0);
            double fact = 1;
            for (int n = 1; n <= 16; ++n) {
                pw *= ikh * h;
                fact *= n;
                const cplx t = pw * std::pow(h, m + 1) / (fact * double(n + m + 1));
                acc += t;
                if (std::abs(t) < 1e-18 * std::abs(acc)) break;
            }
            M[m] = acc;
        }
        return;
    }
    const cplx ik(0, k);
    const cplx e(std::cos(kh), -std::sin(kh));
    M[0] = (1.0 - e) / ik;
    M[1] = (M[0] - h * e) / ik;
    M[2] = (2.0 * M[1] - h * h * e) / ik;
}

// int_a^b s(x) e^{-ikx} dx with s sampled at the ends and midpoint (Filon step)
cplx filon_step(double k, double a, double b, const cplx& s0, const cplx& sm, const cplx& s1) {
    const double h = b - a;
    cplx M[3];
    kernel_moments(k, h, M);
    const cplx c0 = s0;
    const cplx c1 = (-3.0 * s0 + 4.0 * sm - s1) / h;
    const cplx c2 = (2.0 * s0 - 4.0 * sm + 2.0 * s1) / (h * h);
    const cplx e(std::cos(k * a), -std::sin(k * a));
    return e * (c0 * M[0] + c1 * M[1] + c2 * M[2]);
}

cplx fourier_piece(double k, double a, double b) {
    if (k == 0) return cplx(b - a, 0);
    const cplx ik(0, k);
    const cplx ea(std::cos(k * a), -std::sin(k * a));
    const cplx eb(std::cos(k * b), -std::sin(k * b));
    return (ea - eb) / ik;
}

void check_window(const KernelSpec& spec, const std::vector<double>& ks) {
    for (double k : ks)
        if (k < spec.k_lo || k > spec.k_hi)
            throw DomainError("k = " + format_double(k) + " outside the kernel window [" +
                              format_double(spec.k_lo) + ", " + format_double(spec.k_hi) + "]");
}

} // namespace

std::vector<cplx> apply_T(const KernelEvaluator& kernel, const StepFunction& f,
                          const std::vector<double>& k_grid, double N) {
    f.validate();
    check_window(kernel.spec(), k_grid);
    const bool is_fourier = kernel.spec().kind == KernelSpec::Kind::fourier;
    if (!is_fourier && N > kernel.x_max() + 1e-9)
        throw DomainError("apply_T: truncation point beyond the kernel domain");

    std::vector<cplx> out(k_grid.size(), cplx(0, 0));
    for (std::size_t ik = 0; ik < k_grid.size(); ++ik) {
        const double k = k_grid[ik];
        cplx acc(0, 0);
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            const double v = f.values[i];
            if (v == 0.0) continue;
            const double a = std::max(0.0, f.breakpoints[i]);
            const double b = std::min(N, f.breakpoints[i + 1]);
            if (a >= b) continue;
            if (is_fourier) {
                acc += v * fourier_piece(k, a, b);
            } else {
                const std::size_t steps = std::size_t(std::ceil((b - a) / 0.05));
                const double h = (b - a) / double(steps);
                for (std::size_t s = 0; s < steps; ++s) {
                    const double xa = a + h * double(s), xb = xa + h;
                    // smooth factor relative to the carrier e^{-ikx}
                    auto smooth = [&](double x) {
                        return kernel.eval(k, x) * cplx(std::cos(k * x), std::sin(k * x));
                    };
                    acc += v * filon_step(k, xa, xb, smooth(xa), smooth(0.5 * (xa + xb)),
                                          smooth(xb));
                }
            }
        }
        out[ik] = acc;
    }
    return out;
}

namespace {

// exact sup of |z0 + zeta e^{-ikN}| over N in [a, b] (fourier pieces)
double arc_supremum(const cplx& z0, const cplx& zeta, double k, double a, double b) {
    double best = std::max(std::abs(z0 + zeta * cplx(std::cos(k * a), -std::sin(k * a))),
                           std::abs(z0 + zeta * cplx(std::cos(k * b), -std::sin(k * b))));
    if (std::abs(z0) == 0.0) return std::max(best, std::abs(zeta));
    if (k * (b - a) >= 2.0 * M_PI) return std::abs(z0) + std::abs(zeta);
    // alignment angle: arg(zeta) - kN = arg(z0)  (mod 2pi)
    const double target = std::arg(zeta) - std::arg(z0);
    const double j_lo = std::ceil((target - k * b) / (2.0 * M_PI));
    const double j_hi = std::floor((target - k * a) / (2.0 * M_PI));
    if (j_lo <= j_hi) best = std::max(best, std::abs(z0) + std::abs(zeta));
    return best;
}

} // namespace

std::vector<double> maximal_function(const KernelEvaluator& kernel, const StepFunction& f,
                                     const std::vector<double>& k_grid,
                                     const std::vector<double>& N_grid) {
    f.validate();
    check_window(kernel.spec(), k_grid);
    const bool is_fourier = kernel.spec().kind == KernelSpec::Kind::fourier;

    // event points: truncation grid plus breakpoints, inside the support hull
    std::vector<double> events = N_grid;
    events.insert(events.end(), f.breakpoints.begin(), f.breakpoints.end());
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    while (!events.empty() && events.front() < 0) events.erase(events.begin());

    std::vector<double> out(k_grid.size(), 0.0);
    for (std::size_t ik = 0; ik < k_grid.size(); ++ik) {
        const double k = k_grid[ik];
        cplx acc(0, 0);
        double sup = 0.0;
        double prev = 0.0;
        for (double ev : events) {
            if (ev <= prev) { sup = std::max(sup, std::abs(acc)); continue; }
            // integrate f over (prev, ev) piece by piece
            for (std::size_t i = 0; i < f.values.size(); ++i) {
                const double v = f.values[i];
                const double a = std::max(prev, f.breakpoints[i]);
                const double b = std::min(ev, f.breakpoints[i + 1]);
                if (a >= b || v == 0.0) continue;
                if (is_fourier) {
                    if (k > 0) {
                        // running value at N in (a,b) is z0 + zeta e^{-ikN}
                        const cplx zeta = cplx(0, 1) * v / k;
                        const cplx z0 = acc - zeta * cplx(std::cos(k * a), -std::sin(k * a));
                        sup = std::max(sup, arc_supremum(z0, zeta, k, a, b));
                    }
                    acc += v * fourier_piece(k, a, b);
                } else {
                    const std::size_t steps = std::size_t(std::ceil((b - a) / 0.05));
                    const double h = (b - a) / double(steps);
                    for (std::size_t s = 0; s < steps; ++s) {
                        const double xa = a + h * double(s), xb = xa + h;
                        auto smooth = [&](double x) {
                            return kernel.eval(k, x) * cplx(std::cos(k * x), std::sin(k * x));
                        };
                        acc += v * filon_step(k, xa, xb, smooth(xa), smooth(0.5 * (xa + xb)),
                                              smooth(xb));
                        sup = std::max(sup, std::abs(acc));
                    }
                }
            }
            sup = std::max(sup, std::abs(acc));
            prev = ev;
        }
        out[ik] = sup;
    }
    return out;
}

double grid_lq_norm(const std::vector<double>& values, const std::vector<double>& k_grid,
                    double q) {
    if (values.size() != k_grid.size() || values.size() < 2)
        throw DomainError("grid_lq_norm: need matching grids with >= 2 points");
    double acc = 0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double w = k_grid[i + 1] - k_grid[i];
        acc += 0.5 * w * (std::pow(std::abs(values[i]), q) + std::pow(std::abs(values[i + 1]), q));
    }
    return std::pow(acc, 1.0 / q);
}

namespace {

double weighted_norm2(const std::vector<cplx>& v, double w) {
    double s = 0;
    for (const auto& z : v) s += std::norm(z);
    return s * w;
}

struct DiscreteKernel {
    std::vector<double> xs, ks, phi, inv_k;
    double dx = 0, dk = 0;
    const KernelEvaluator* eval = nullptr;
    KernelSpec::Kind kind;
    std::vector<std::vector<cplx>> rows; // stored rows (bloch / custom)

    cplx entry(std::size_t i, std::size_t j) const {
        switch (kind) {
            case KernelSpec::Kind::fourier: {
                const double ang = -ks[i] * xs[j];
                return cplx(std::cos(ang), std::sin(ang));
            }
            case KernelSpec::Kind::free_phase: {
                const double ang = -ks[i] * xs[j] + 2.0 * phi[j] * inv_k[i];
                return cplx(std::cos(ang), std::sin(ang));
            }
            default:
                return rows[i][j];
        }
    }
};

double power_iteration(const DiscreteKernel& K, par::Mode mode, int max_iter, int& iters,
                       bool& converged) {
    const std::size_t n_x = K.xs.size(), n_k = K.ks.size();
    std::vector<cplx> v(n_x), y(n_k), z(n_x);
    std::mt19937_64 rng(20240801ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& c : v) c = cplx(u(rng), u(rng));

    double sigma2 = 0;
    converged = false;
    for (iters = 1; iters <= max_iter; ++iters) {
        par::parallel_for(n_k, mode, [&](std::size_t i) {
            cplx acc(0, 0);
            for (std::size_t j = 0; j < n_x; ++j) acc += K.entry(i, j) * v[j];
            y[i] = acc * K.dx;
        });
        const double num = weighted_norm2(y, K.dk);
        const double den = weighted_norm2(v, K.dx);
        const double s2 = num / den;
        par::parallel_for(n_x, mode, [&](std::size_t j) {
            cplx acc(0, 0);
            for (std::size_t i = 0; i < n_k; ++i) acc += std::conj(K.entry(i, j)) * y[i];
            z[j] = acc * K.dk;
        });
        double zn = std::sqrt(weighted_norm2(z, K.dx));
        if (zn == 0) { sigma2 = 0; converged = true; break; }
        for (std::size_t j = 0; j < n_x; ++j) v[j] = z[j] / zn;
        if (iters >= 3 && std::abs(std::sqrt(s2 / std::max(sigma2, 1e-300)) - 1.0) < 1e-5) {
            sigma2 = s2;
            converged = true;
            break;
        }
        sigma2 = s2;
    }
    return std::sqrt(sigma2);
}

double estimate_once(KernelEvaluator& kernel, double X, double x_per_unit, std::size_t n_k,
                     par::Mode mode, int max_iter, int& iters, bool& converged) {
    DiscreteKernel K;
    K.kind = kernel.spec().kind;
    K.eval = &kernel;
    const std::size_t n_x = std::size_t(std::llround(X * x_per_unit));
    K.dx = X / double(n_x);
    K.dk = (kernel.spec().k_hi - kernel.spec().k_lo) / double(n_k);
    K.xs.resize(n_x);
    for (std::size_t j = 0; j < n_x; ++j) K.xs[j] = (double(j) + 0.5) * K.dx;
    K.ks.resize(n_k);
    for (std::size_t i = 0; i < n_k; ++i)
        K.ks[i] = kernel.spec().k_lo + (double(i) + 0.5) * K.dk;

    kernel.prepare(K.ks);
    if (K.kind == KernelSpec::Kind::free_phase) {
        K.phi.resize(n_x);
        K.inv_k.resize(n_k);
        for (std::size_t j = 0; j < n_x; ++j) K.phi[j] = kernel.phase_integral(K.xs[j]);
        for (std::size_t i = 0; i < n_k; ++i) K.inv_k[i] = 1.0 / K.ks[i];
    } else if (K.kind != KernelSpec::Kind::fourier) {
        K.rows.resize(n_k);
        for (std::size_t i = 0; i < n_k; ++i) {
            K.rows[i].resize(n_x);
            kernel.fill_row(K.ks[i], K.xs, K.rows[i].data());
        }
    }
    return power_iteration(K, mode, max_iter, iters, converged);
}

} // namespace

L2NormEstimate estimate_l2_norm(KernelEvaluator& kernel, double X, double x_per_unit,
                                std::size_t n_k, par::Mode mode, bool resolution_check,
                                int max_iter) {
    if (!(X > 0) || !(x_per_unit > 0) || n_k < 4)
        throw ConfigError("estimate_l2_norm: bad discretization parameters");
    if (X > kernel.x_max() + 1e-9 && kernel.spec().kind != KernelSpec::Kind::fourier)
        throw DomainError("estimate_l2_norm: X beyond the kernel domain");

    L2NormEstimate est;
    est.value = estimate_once(kernel, X, x_per_unit, n_k, mode, max_iter, est.iterations,
                              est.converged);
    if (!est.converged)
        throw NumericalError("estimate_l2_norm: power iteration did not converge");
    if (resolution_check) {
        int it2 = 0;
        bool conv2 = false;
        est.value_refined =
            estimate_once(kernel, X, 2.0 * x_per_unit, 2 * n_k, mode, max_iter, it2, conv2);
        est.resolution_delta = std::abs(est.value_refined - est.value) / est.value;
    }
    return est;
}

SymbolClassReport check_symbol_class(const std::function<cplx(double, double)>& symbol,
                                     double k_lo, double k_hi, double rho, double sigma,
                                     double margin, double x_lo, double x_hi, std::size_t n_x,
                                     std::size_t n_k) {
    if (!(k_lo < k_hi) || !(x_lo < x_hi)) throw DomainError("check_symbol_class: bad windows");
    const double hx = 1e-4, hk = 1e-4;
    const std::vector<double> xs = geomspace(x_lo, x_hi, n_x);
    const std::vector<double> ks = linspace(k_lo + 2 * hk, k_hi - 2 * hk, n_k);

    std::vector<double> sup_dx(n_x, 0), sup_dk(n_x, 0), sup_mixed(n_x, 0);
    for (std::size_t jx = 0; jx < n_x; ++jx) {
        const double x = xs[jx];
        for (double k : ks) {
            const cplx app = symbol(k, x + hx), amm = symbol(k, x - hx);
            const cplx akp = symbol(k + hk, x), akm = symbol(k - hk, x);
            const cplx pp = symbol(k + hk, x + hx), pm = symbol(k + hk, x - hx);
            const cplx mp = symbol(k - hk, x + hx), mm = symbol(k - hk, x - hx);
            sup_dx[jx] = std::max(sup_dx[jx], std::abs((app - amm) / (2 * hx)));
            sup_dk[jx] = std::max(sup_dk[jx], std::abs((akp - akm) / (2 * hk)));
            sup_mixed[jx] =
                std::max(sup_mixed[jx], std::abs((pp - pm - mp + mm) / (4 * hk * hx)));
        }
    }

    std::vector<double> grown(n_x);
    for (std::size_t j = 0; j < n_x; ++j) grown[j] = 1.0 + xs[j];

    // an identically-vanishing derivative satisfies any envelope
    auto fit_or_trivial = [&](const std::vector<double>& sups, bool& trivial) {
        trivial = *std::max_element(sups.begin(), sups.end()) <= 1e-13;
        if (trivial) return -99.0;
        std::vector<double> gx, gy;
        for (std::size_t j = 0; j < sups.size(); ++j)
            if (sups[j] > 0) {
                gx.push_back(grown[j]);
                gy.push_back(sups[j]);
            }
        return loglog_fit(gx, gy).slope;
    };

    SymbolClassReport rep;
    rep.rho = rho;
    rep.sigma = sigma;
    rep.margin = margin;
    bool tx = false, tk = false, tm = false;
    rep.fit_dx = fit_or_trivial(sup_dx, tx);
    rep.fit_dk = fit_or_trivial(sup_dk, tk);
    rep.fit_mixed = fit_or_trivial(sup_mixed, tm);
    const double floor_est = 1e-12;
    rep.resolution_warning =
        !tm && *std::min_element(sup_mixed.begin(), sup_mixed.end()) < floor_est;
    rep.pass = (tx || rep.fit_dx <= -rho + margin) && (tk || rep.fit_dk <= sigma + margin) &&
               (tm || rep.fit_mixed <= sigma - rho + margin);
    return rep;
}

std::function<cplx(double, double)> make_free_phase_symbol(const PotentialSpec& V, double x_max) {
    auto eval = std::make_shared<KernelEvaluator>(
        KernelSpec::free_phase(V, 1e-3, 1e9), x_max * 1.01 + 2.0);
    return [eval](double k, double x) -> cplx {
        const double ang = 2.0 * eval->phase_integral(x) / k;
        return cplx(std::cos(ang), std::sin(ang));
    };
}

MaximalExperimentReport maximal_bound_experiment(const KernelEvaluator& kernel, double p,
                                                 double q, std::size_t ensemble,
                                                 const std::vector<int>& support_powers,
                                                 std::uint64_t seed, std::size_t n_k,
                                                 par::Mode mode) {
    if (!(q > 2.0)) throw DomainError("maximal_bound_experiment: needs q > 2");
    if (std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-9)
        throw DomainError("maximal_bound_experiment: needs 1/p + 1/q = 1");
    if (ensemble == 0 || support_powers.empty())
        throw DomainError("maximal_bound_experiment: empty ensemble");

    const std::vector<double> ks = linspace(kernel.spec().k_lo + 1e-6,
                                            kernel.spec().k_hi - 1e-6, n_k);

    auto ratio_of = [&](const StepFunction& f) {
        const std::vector<double> mf = maximal_function(kernel, f, ks, f.breakpoints);
        const double num = grid_lq_norm(mf, ks, q);
        const double den = lorentz_norm(f, p, q).value;
        return num / den;
    };

    MaximalExperimentReport rep;
    rep.baseline = ratio_of(make_indicator(0.0, 1.0));

    rep.rows.resize(ensemble * support_powers.size());
    par::parallel_for(rep.rows.size(), mode, [&](std::size_t t) {
        const std::size_t ip = t / ensemble;
        const std::size_t ie = t % ensemble;
        MaximalExperimentRow row;
        row.support_pow = support_powers[ip];
        row.ensemble_idx = int(ie);
        const StepFunction f = random_step_function(
            derive_seed(seed, t), 16, std::exp2(support_powers[ip]));
        row.ratio = ratio_of(f);
        rep.rows[t] = row;
    });

    std::vector<double> per_pow_max(support_powers.size(), 0.0);
    for (const auto& r : rep.rows) {
        rep.max_ratio = std::max(rep.max_ratio, r.ratio);
        for (std::size_t ip = 0; ip < support_powers.size(); ++ip)
            if (support_powers[ip] == r.support_pow)
                per_pow_max[ip] = std::max(per_pow_max[ip], r.ratio);
    }
    if (support_powers.size() >= 3) {
        std::vector<double> supp(support_powers.size());
        for (std::size_t i = 0; i < supp.size(); ++i) supp[i] = std::exp2(support_powers[i]);
        rep.growth_slope = loglog_fit(supp, per_pow_max).slope;
    }
    rep.pass = rep.max_ratio <= 3.0 * rep.baseline;
    return rep;
}

void write_maximal_csv(const MaximalExperimentReport& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << "support_n,ensemble_idx,ratio\n";
    for (const auto& row : r.rows)
        out << row.support_pow << ',' << row.ensemble_idx << ',' << format_double(row.ratio)
            << '\n';
}

} // namespace acspec
