#ifndef ACSPEC_BLOCH_HPP
#define ACSPEC_BLOCH_HPP

#include <string>
#include <vector>

#include "acspec/ode.hpp"

namespace acspec {

struct Monodromy {
    double m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    double lambda = 0, period = 0;
    double det() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }
};

// Propagator of the basis y2(0)=1, y2'(0)=0 and y1(0)=0, y1'(0)=1 over one
// period. Explicit-period core; the convenience overload reads the period
// from a periodic-kind spec.
Monodromy monodromy(const Potential& U, double period, double lambda,
                    const IntegratorConfig& cfg);
Monodromy monodromy(const Potential& U, double lambda, const IntegratorConfig& cfg);

double discriminant(const Potential& U, double period, double lambda,
                    const IntegratorConfig& cfg);
double discriminant(const Potential& U, double lambda, const IntegratorConfig& cfg);

struct Band {
    int index = 0;       // 1-based, in energy order
    double lo = 0, hi = 0;
    enum class Parity { odd, even } parity = Parity::odd;
    double width() const { return hi - lo; }
};

// Scans the discriminant on [lo, hi] and localizes |D| = 2 crossings by
// bisection to tol. Bands touching the range ends are clamped. Gaps narrower
// than the scan resolution are not resolved.
std::vector<Band> find_bands(const Potential& U, double period, double lo, double hi, double tol,
                             const IntegratorConfig& cfg, std::size_t scan_points = 2400,
                             par::Mode mode = par::default_mode());
std::vector<Band> find_bands(const Potential& U, double lo, double hi, double tol,
                             const IntegratorConfig& cfg, std::size_t scan_points = 2400,
                             par::Mode mode = par::default_mode());

// gamma = arccos(D/2) in (0, pi); throws DomainError at or outside band edges
double quasimomentum(const Potential& U, double period, double lambda,
                     const IntegratorConfig& cfg);
double quasimomentum(const Potential& U, double lambda, const IntegratorConfig& cfg);

// Floquet solution theta with theta(x+T) = e^{i gamma} theta(x), normalized to
// ||theta||_{L2(0,T)} = 1, eigenvector pinned to the multiplier with positive
// imaginary part, global phase pinned so theta(0) is real positive.
struct BlochData {
    double lambda = 0, gamma = 0, period = 0;
    cplx multiplier;             // e^{i gamma}
    cplx w;                      // theta conj(theta)' - theta' conj(theta)
    std::vector<double> xs;      // closed uniform grid over [0, T]
    std::vector<cplx> theta, dtheta;
    double sup_theta = 0;
    double floquet_residual = 0; // max |theta(x+T) - e^{i gamma} theta(x)| over the grid
    double w_drift = 0;          // max |w(x) - w(0)| over the grid

    // Evaluate anywhere x >= 0 through the Floquet relation; cubic Hermite
    // interpolation between stored nodes inside the period.
    State2 eval(double x) const;
};

BlochData bloch_function(const Potential& U, double period, double lambda,
                         const IntegratorConfig& cfg, std::size_t samples_per_period = 2048);
BlochData bloch_function(const Potential& U, double lambda, const IntegratorConfig& cfg,
                         std::size_t samples_per_period = 2048);

// Fourier coefficients sigma_hat_j, |j| <= J, of sigma(x) = (e^{-i gamma x/T} theta)^2.
// Returned with index j at position j + J.
std::vector<cplx> sigma_fourier(const BlochData& bd, int J);

// sigma evaluated at the stored nodes (for reconstruction / Parseval checks)
std::vector<cplx> sigma_samples(const BlochData& bd);

struct BandConstants {
    double omega_n = 0; // inf |w|
    double eta_n = 0;   // inf |gamma'| (finite differences)
    double sigma_n = 0; // sup |d sigma / dx|
    double c_n = 0;     // sup ||sigma^2||_{L2(0,T)}
};

BandConstants band_interior_constants(const Potential& U, double period, const Band& band,
                                      double margin, const IntegratorConfig& cfg,
                                      std::size_t n_lambda = 33,
                                      std::size_t samples_per_period = 1024);

// Band table CSV: columns n, a_n, b_n, parity
void write_bands_csv(const std::vector<Band>& bands, const std::string& path);

// Bloch sample emission: trajectory CSV plus a JSON header (lambda, gamma, w)
void write_bloch_data(const BlochData& bd, const std::string& csv_path,
                      const std::string& json_path);

} // namespace acspec

#endif
