#include "acspec/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"

namespace acspec {

namespace {
constexpr double kEdgeTol = 1e-9; // |D| this close to 2 counts as a band edge
}

Monodromy monodromy(const Potential& U, double period, double lambda,
                    const IntegratorConfig& cfg) {
    if (period <= 0) throw DomainError("monodromy: period must be positive");
    const TransferMatrix t = transfer_matrix(U, lambda, 0.0, period, cfg);
    Monodromy m;
    m.m11 = t.m11;
    m.m12 = t.m12;
    m.m21 = t.m21;
    m.m22 = t.m22;
    m.lambda = lambda;
    m.period = period;
    return m;
}

Monodromy monodromy(const Potential& U, double lambda, const IntegratorConfig& cfg) {
    return monodromy(U, period_of(U.spec()), lambda, cfg);
}

double discriminant(const Potential& U, double period, double lambda,
                    const IntegratorConfig& cfg) {
    return monodromy(U, period, lambda, cfg).trace();
}

double discriminant(const Potential& U, double lambda, const IntegratorConfig& cfg) {
    return discriminant(U, period_of(U.spec()), lambda, cfg);
}

std::vector<Band> find_bands(const Potential& U, double period, double lo, double hi, double tol,
                             const IntegratorConfig& cfg, std::size_t scan_points,
                             par::Mode mode) {
    if (!(lo < hi)) throw DomainError("find_bands: empty range");
    if (tol <= 0) throw DomainError("find_bands: tol must be positive");
    if (scan_points < 8) throw DomainError("find_bands: too few scan points");

    const std::vector<double> grid = linspace(lo, hi, scan_points);
    std::vector<double> disc(grid.size());
    par::parallel_for(grid.size(), mode, [&](std::size_t i) {
        disc[i] = discriminant(U, period, grid[i], cfg);
    });

    auto inside = [](double d) { return std::abs(d) < 2.0; };

    // bisect the inside/outside flip between bracket points a < b
    auto locate = [&](double a, double b, bool inside_a) {
        while (b - a > tol) {
            const double m = 0.5 * (a + b);
            if (inside(discriminant(U, period, m, cfg)) == inside_a)
                a = m;
            else
                b = m;
        }
        return 0.5 * (a + b);
    };

    std::vector<Band> bands;
    bool in_band = inside(disc[0]);
    double band_lo = grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool now = inside(disc[i]);
        if (now && !in_band) {
            band_lo = locate(grid[i - 1], grid[i], false);
        } else if (!now && in_band) {
            Band b;
            b.lo = band_lo;
            b.hi = locate(grid[i - 1], grid[i], true);
            bands.push_back(b);
        }
        in_band = now;
    }
    if (in_band) {
        Band b;
        b.lo = band_lo;
        b.hi = grid.back();
        bands.push_back(b);
    }

    // Gaps narrower than the scan step hide between in-band samples; hunt
    // them at interior local maxima of |D| that come close to 2.
    const double split_guard = 1e-9;
    std::vector<Band> refined;
    for (const Band& b : bands) {
        std::vector<std::pair<double, double>> gaps;
        for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
            if (grid[i] <= b.lo || grid[i] >= b.hi) continue;
            const double a0 = std::abs(disc[i]);
            if (a0 < 2.0 - 0.01) continue;
            if (a0 < std::abs(disc[i - 1]) || a0 < std::abs(disc[i + 1])) continue;
            // golden-section maximum of |D| over the bracketing samples
            double lo = std::max(grid[i - 1], b.lo), hi = std::min(grid[i + 1], b.hi);
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = std::abs(discriminant(U, period, x1, cfg));
            double f2 = std::abs(discriminant(U, period, x2, cfg));
            while (hi - lo > 0.25 * tol) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = std::abs(discriminant(U, period, x2, cfg));
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = std::abs(discriminant(U, period, x1, cfg));
                }
            }
            const double peak_x = 0.5 * (lo + hi);
            const double peak = std::abs(discriminant(U, period, peak_x, cfg));
            if (peak <= 2.0 + split_guard) continue;
            const double gap_lo = locate(grid[i - 1], peak_x, true);
            const double gap_hi = locate(peak_x, grid[i + 1], false);
            gaps.emplace_back(gap_lo, gap_hi);
        }
        double lo = b.lo;
        for (const auto& g : gaps) {
            Band frag;
            frag.lo = lo;
            frag.hi = g.first;
            refined.push_back(frag);
            lo = g.second;
        }
        Band last;
        last.lo = lo;
        last.hi = b.hi;
        refined.push_back(last);
    }

    for (std::size_t i = 0; i < refined.size(); ++i) {
        refined[i].index = int(i) + 1;
        refined[i].parity = i % 2 == 0 ? Band::Parity::odd : Band::Parity::even;
    }
    return refined;
}

std::vector<Band> find_bands(const Potential& U, double lo, double hi, double tol,
                             const IntegratorConfig& cfg, std::size_t scan_points,
                             par::Mode mode) {
    return find_bands(U, period_of(U.spec()), lo, hi, tol, cfg, scan_points, mode);
}

double quasimomentum(const Potential& U, double period, double lambda,
                     const IntegratorConfig& cfg) {
    const double d = discriminant(U, period, lambda, cfg);
    if (std::abs(d) >= 2.0 - kEdgeTol)
        throw DomainError("quasimomentum: lambda = " + format_double(lambda) +
                          " is at or outside a band edge (|D| = " + format_double(std::abs(d)) +
                          ")");
    return std::acos(0.5 * d);
}

double quasimomentum(const Potential& U, double lambda, const IntegratorConfig& cfg) {
    return quasimomentum(U, period_of(U.spec()), lambda, cfg);
}

State2 BlochData::eval(double x) const {
    const double T = period;
    double k = std::floor(x / T);
    double r = x - k * T;
    if (r < 0) { r += T; k -= 1; }
    const std::size_t n = xs.size() - 1;
    const double h = T / double(n);
    std::size_t j = std::min(std::size_t(r / h), n - 1);
    const double t = (r - xs[j]) / h;

    const double h00 = (2 * t - 3) * t * t + 1;
    const double h10 = ((t - 2) * t + 1) * t;
    const double h01 = (3 - 2 * t) * t * t;
    const double h11 = (t - 1) * t * t;
    const double d00 = 6 * t * (t - 1) / h;
    const double d10 = (3 * t - 4) * t + 1;
    const double d01 = 6 * t * (1 - t) / h;
    const double d11 = (3 * t - 2) * t;

    cplx val = h00 * theta[j] + h10 * h * dtheta[j] + h01 * theta[j + 1] + h11 * h * dtheta[j + 1];
    cplx der = d00 * theta[j] + d10 * dtheta[j] + d01 * theta[j + 1] + d11 * dtheta[j + 1];

    // Floquet factor e^{i k gamma}
    const double ang = k * gamma;
    const cplx fac(std::cos(ang), std::sin(ang));
    return State2{fac * val, fac * der};
}

namespace {

// composite Simpson over a closed uniform grid (even interval count required)
double simpson_closed(const std::vector<double>& f, double h) {
    const std::size_t n = f.size() - 1;
    double s = f[0] + f[n];
    for (std::size_t i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
    return s * h / 3.0;
}

} // namespace

BlochData bloch_function(const Potential& U, double period, double lambda,
                         const IntegratorConfig& cfg, std::size_t samples_per_period) {
    if (samples_per_period < 16 || samples_per_period % 2 != 0)
        throw ConfigError("bloch_function: samples_per_period must be even and >= 16");
    const Monodromy m = monodromy(U, period, lambda, cfg);
    const double d = m.trace();
    if (std::abs(d) >= 2.0 - kEdgeTol)
        throw DomainError("bloch_function: defective monodromy, |D| = 2 within tolerance at "
                          "lambda = " + format_double(lambda));

    const double gamma = std::acos(0.5 * d);
    const cplx mu(0.5 * d, std::sin(gamma)); // positive imaginary part

    // eigenvector of the monodromy for eigenvalue mu
    cplx v1, v2;
    if (std::abs(m.m12) >= std::abs(m.m21)) {
        v1 = m.m12;
        v2 = mu - m.m11;
    } else {
        v1 = mu - m.m22;
        v2 = m.m21;
    }
    const double scale = std::max(std::abs(v1), std::abs(v2));
    if (scale == 0) throw NumericalError("bloch_function: zero Floquet eigenvector");
    v1 /= scale;
    v2 /= scale;

    BlochData bd;
    bd.lambda = lambda;
    bd.gamma = gamma;
    bd.period = period;
    bd.multiplier = mu;
    bd.xs = linspace(0.0, period, samples_per_period + 1);

    IntegratorConfig c = cfg;
    c.sample_grid = bd.xs;
    const Trajectory traj = integrate_ivp(U, lambda, 0.0, period, State2{v1, v2}, c);
    if (traj.x.size() != bd.xs.size())
        throw NumericalError("bloch_function: sampler grid mismatch");

    bd.theta.resize(bd.xs.size());
    bd.dtheta.resize(bd.xs.size());
    for (std::size_t i = 0; i < bd.xs.size(); ++i) {
        bd.theta[i] = traj.states[i].u;
        bd.dtheta[i] = traj.states[i].du;
    }

    // L2(0,T) normalization
    std::vector<double> absq(bd.xs.size());
    for (std::size_t i = 0; i < absq.size(); ++i) absq[i] = std::norm(bd.theta[i]);
    const double norm = std::sqrt(simpson_closed(absq, period / double(samples_per_period)));
    if (norm <= 0) throw NumericalError("bloch_function: zero norm");

    // global phase: theta(0) real positive (falls back to the derivative)
    cplx pin = bd.theta[0];
    if (std::abs(pin) < 1e-12) pin = bd.dtheta[0];
    const cplx rot = std::conj(pin) / std::abs(pin) / norm;
    for (std::size_t i = 0; i < bd.xs.size(); ++i) {
        bd.theta[i] *= rot;
        bd.dtheta[i] *= rot;
    }

    bd.w = bd.theta[0] * std::conj(bd.dtheta[0]) - bd.dtheta[0] * std::conj(bd.theta[0]);
    double sup = 0, wdrift = 0;
    for (std::size_t i = 0; i < bd.xs.size(); ++i) {
        sup = std::max(sup, std::abs(bd.theta[i]));
        const cplx wi =
            bd.theta[i] * std::conj(bd.dtheta[i]) - bd.dtheta[i] * std::conj(bd.theta[i]);
        wdrift = std::max(wdrift, std::abs(wi - bd.w));
    }
    // the peak can fall between nodes; refine with interpolated midpoints
    for (std::size_t i = 0; i + 1 < bd.xs.size(); ++i)
        sup = std::max(sup, std::abs(bd.eval(0.5 * (bd.xs[i] + bd.xs[i + 1])).u));
    bd.sup_theta = sup * (1.0 + 1e-9);
    bd.w_drift = wdrift;

    // Floquet identity residual: propagate one extra period directly
    const Trajectory ext =
        integrate_ivp(U, lambda, 0.0, period, State2{bd.theta[0] * mu, bd.dtheta[0] * mu}, c);
    double res = 0;
    for (std::size_t i = 0; i < bd.xs.size(); ++i)
        res = std::max(res, std::abs(ext.states[i].u - mu * bd.theta[i]));
    bd.floquet_residual = res;
    return bd;
}

BlochData bloch_function(const Potential& U, double lambda, const IntegratorConfig& cfg,
                         std::size_t samples_per_period) {
    return bloch_function(U, period_of(U.spec()), lambda, cfg, samples_per_period);
}

std::vector<cplx> sigma_samples(const BlochData& bd) {
    const std::size_t n = bd.xs.size() - 1;
    std::vector<cplx> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double ang = -bd.gamma * bd.xs[j] / bd.period;
        const cplx blochless = cplx(std::cos(ang), std::sin(ang)) * bd.theta[j];
        sigma[j] = blochless * blochless;
    }
    return sigma;
}

std::vector<cplx> sigma_fourier(const BlochData& bd, int J) {
    if (J < 1) throw DomainError("sigma_fourier: J must be >= 1");
    const std::vector<cplx> sigma = sigma_samples(bd);
    const std::size_t n = sigma.size();
    if (std::size_t(2 * J) >= n) throw DomainError("sigma_fourier: J too large for sample count");
    std::vector<cplx> coeff(2 * J + 1);
    for (int mth = -J; mth <= J; ++mth) {
        cplx acc(0, 0);
        for (std::size_t jn = 0; jn < n; ++jn) {
            const double ang = -2.0 * M_PI * double(mth) * double(jn) / double(n);
            acc += sigma[jn] * cplx(std::cos(ang), std::sin(ang));
        }
        coeff[std::size_t(mth + J)] = acc / double(n);
    }
    return coeff;
}

BandConstants band_interior_constants(const Potential& U, double period, const Band& band,
                                      double margin, const IntegratorConfig& cfg,
                                      std::size_t n_lambda, std::size_t samples_per_period) {
    if (!(margin > 0) || margin >= 0.5 * band.width())
        throw DomainError("band_interior_constants: margin must be in (0, width/2)");
    if (n_lambda < 5) throw DomainError("band_interior_constants: need >= 5 energies");

    const std::vector<double> lams = linspace(band.lo + margin, band.hi - margin, n_lambda);
    std::vector<double> gammas(lams.size());
    BandConstants k;
    k.omega_n = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lams.size(); ++i) {
        const BlochData bd = bloch_function(U, period, lams[i], cfg, samples_per_period);
        gammas[i] = bd.gamma;
        k.omega_n = std::min(k.omega_n, std::abs(bd.w));

        const std::vector<cplx> sig = sigma_samples(bd);
        const std::size_t n = bd.xs.size() - 1;
        double sup_ds = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -bd.gamma * bd.xs[j] / bd.period;
            const cplx p = cplx(std::cos(ang), std::sin(ang)) * bd.theta[j];
            const cplx dp = cplx(std::cos(ang), std::sin(ang)) *
                            (bd.dtheta[j] - cplx(0, bd.gamma / bd.period) * bd.theta[j]);
            sup_ds = std::max(sup_ds, std::abs(2.0 * p * dp));
        }
        // ||sigma^2||_{L2(0,T)}: |sigma|^4 on the closed grid (sigma is periodic)
        std::vector<double> s4(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            const std::size_t jj = (j == n) ? 0 : j;
            s4[j] = std::norm(sig[jj]) * std::norm(sig[jj]);
        }
        k.sigma_n = std::max(k.sigma_n, sup_ds);
        k.c_n = std::max(k.c_n, std::sqrt(simpson_closed(s4, bd.period / double(n))));
    }
    const double dl = lams[1] - lams[0];
    k.eta_n = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < gammas.size(); ++i)
        k.eta_n = std::min(k.eta_n, std::abs((gammas[i + 1] - gammas[i - 1]) / (2.0 * dl)));
    return k;
}

void write_bands_csv(const std::vector<Band>& bands, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << "n,a_n,b_n,parity\n";
    for (const auto& b : bands)
        out << b.index << ',' << format_double(b.lo) << ',' << format_double(b.hi) << ','
            << (b.parity == Band::Parity::odd ? "odd" : "even") << '\n';
}

void write_bloch_data(const BlochData& bd, const std::string& csv_path,
                      const std::string& json_path) {
    Trajectory t;
    t.x = bd.xs;
    t.states.resize(bd.xs.size());
    for (std::size_t i = 0; i < bd.xs.size(); ++i) t.states[i] = State2{bd.theta[i], bd.dtheta[i]};
    write_trajectory_csv(t, csv_path);

    nlohmann::ordered_json j;
    j["lambda"] = bd.lambda;
    j["gamma"] = bd.gamma;
    j["period"] = bd.period;
    j["w"] = {bd.w.real(), bd.w.imag()};
    j["sup_theta"] = bd.sup_theta;
    j["floquet_residual"] = bd.floquet_residual;
    std::ofstream out(json_path);
    if (!out) throw ConfigError("cannot open output file: " + json_path);
    out << j.dump(2) << '\n';
}

} // namespace acspec
