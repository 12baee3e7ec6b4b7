#ifndef ACSPEC_POTENTIAL_HPP
#define ACSPEC_POTENTIAL_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "acspec/numutil.hpp"

#include "json.hpp"

namespace acspec {

enum class PotentialKind {
    power_oscillatory,  // C cos(omega x + phase) (1+|x|)^{-alpha}
    wigner_von_neumann, // C sin(2 omega x) / (1+|x|)
    exponential,        // C exp(-alpha |x|) cos(omega x + phase)
    periodic_table,     // C cos(2 pi x / period + phase)
    random_decaying,    // C (1+|x|)^{-alpha} * seeded cosine bank, |bank| <= 1
    tabulated,          // linear interpolation of (x, v) samples, 0 outside range
    sum                 // sum of sub-specs
};

std::string kind_name(PotentialKind k);
PotentialKind kind_from_name(const std::string& name);

// Symbolic description of a potential. Evaluation is deterministic given the
// spec (including the seed). Decaying kinds obey |V(x)| <= C (1+|x|)^{-alpha}.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::power_oscillatory;
    double amplitude = 0.0;      // C
    double decay_exponent = 0.0; // alpha >= 0
    double frequency = 0.0;      // omega
    double phase = 0.0;
    double period = 0.0;         // periodic_table only, > 0
    std::uint64_t seed = 0;      // random_decaying only
    bool reflected = false;      // evaluate the formula at -x (whole-line runs)
    std::vector<double> xs, vs;  // tabulated only
    std::vector<PotentialSpec> terms; // sum only

    static PotentialSpec zero();
    static PotentialSpec power_oscillatory(double C, double alpha, double omega, double phase = 0.0);
    static PotentialSpec wigner_von_neumann(double C, double omega);
    static PotentialSpec exponential(double C, double alpha, double omega = 0.0, double phase = 0.0);
    static PotentialSpec periodic(double C, double period, double phase = 0.0);
    static PotentialSpec random_decaying(double C, double alpha, std::uint64_t seed);
    static PotentialSpec tabulated(std::vector<double> xs, std::vector<double> vs);
    static PotentialSpec sum_of(std::vector<PotentialSpec> terms);
};

// True when the kind carries a pointwise decay envelope C (1+|x|)^{-alpha}.
bool has_decay_envelope(const PotentialSpec& spec);
double envelope_bound(const PotentialSpec& spec, double x);

bool is_periodic(const PotentialSpec& spec);
double period_of(const PotentialSpec& spec);

// V(-x) as a new spec of the same kind
PotentialSpec reflected(const PotentialSpec& spec);

// Compiled evaluator; caches the random oscillator bank and table lookups.
class Potential {
public:
    Potential() = default;
    explicit Potential(PotentialSpec spec);
    double operator()(double x) const;
    const PotentialSpec& spec() const { return spec_; }

private:
    PotentialSpec spec_;
    std::vector<double> bank_freq_, bank_phase_; // random_decaying
    std::vector<Potential> terms_;
};

// One-off evaluation (compiles the spec internally)
double eval_potential(const PotentialSpec& spec, double x);

nlohmann::ordered_json to_json(const PotentialSpec& spec);
PotentialSpec potential_from_json(const nlohmann::json& j);

// two-column CSV (x, V); lines starting with '#' are skipped
PotentialSpec tabulated_from_csv(const std::string& path);

} // namespace acspec

#endif
