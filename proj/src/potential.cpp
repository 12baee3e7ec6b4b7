#include "acspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace acspec {

namespace {
constexpr int kRandomBankSize = 8;
}

std::string kind_name(PotentialKind k) {
    switch (k) {
        case PotentialKind::power_oscillatory: return "power_oscillatory";
        case PotentialKind::wigner_von_neumann: return "wigner_von_neumann";
        case PotentialKind::exponential: return "exponential";
        case PotentialKind::periodic_table: return "periodic_table";
        case PotentialKind::random_decaying: return "random_decaying";
        case PotentialKind::tabulated: return "tabulated";
        case PotentialKind::sum: return "sum";
    }
    throw ConfigError("unknown potential kind tag");
}

PotentialKind kind_from_name(const std::string& name) {
    if (name == "power_oscillatory") return PotentialKind::power_oscillatory;
    if (name == "wigner_von_neumann") return PotentialKind::wigner_von_neumann;
    if (name == "exponential") return PotentialKind::exponential;
    if (name == "periodic_table") return PotentialKind::periodic_table;
    if (name == "random_decaying") return PotentialKind::random_decaying;
    if (name == "tabulated") return PotentialKind::tabulated;
    if (name == "sum") return PotentialKind::sum;
    throw ConfigError("unknown potential kind tag: " + name);
}

PotentialSpec PotentialSpec::zero() {
    PotentialSpec s;
    s.kind = PotentialKind::power_oscillatory;
    s.amplitude = 0.0;
    return s;
}

PotentialSpec PotentialSpec::power_oscillatory(double C, double alpha, double omega, double phase) {
    PotentialSpec s;
    s.kind = PotentialKind::power_oscillatory;
    s.amplitude = C;
    s.decay_exponent = alpha;
    s.frequency = omega;
    s.phase = phase;
    return s;
}

PotentialSpec PotentialSpec::wigner_von_neumann(double C, double omega) {
    PotentialSpec s;
    s.kind = PotentialKind::wigner_von_neumann;
    s.amplitude = C;
    s.decay_exponent = 1.0;
    s.frequency = omega;
    return s;
}

PotentialSpec PotentialSpec::exponential(double C, double alpha, double omega, double phase) {
    PotentialSpec s;
    s.kind = PotentialKind::exponential;
    s.amplitude = C;
    s.decay_exponent = alpha;
    s.frequency = omega;
    s.phase = phase;
    return s;
}

PotentialSpec PotentialSpec::periodic(double C, double period, double phase) {
    if (period <= 0) throw ConfigError("periodic potential needs period > 0");
    PotentialSpec s;
    s.kind = PotentialKind::periodic_table;
    s.amplitude = C;
    s.period = period;
    s.phase = phase;
    return s;
}

PotentialSpec PotentialSpec::random_decaying(double C, double alpha, std::uint64_t seed) {
    PotentialSpec s;
    s.kind = PotentialKind::random_decaying;
    s.amplitude = C;
    s.decay_exponent = alpha;
    s.seed = seed;
    return s;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> xs, std::vector<double> vs) {
    if (xs.size() != vs.size() || xs.size() < 2)
        throw ConfigError("tabulated potential needs >= 2 matching samples");
    if (!std::is_sorted(xs.begin(), xs.end()))
        throw ConfigError("tabulated potential abscissae must be sorted");
    PotentialSpec s;
    s.kind = PotentialKind::tabulated;
    s.xs = std::move(xs);
    s.vs = std::move(vs);
    return s;
}

PotentialSpec PotentialSpec::sum_of(std::vector<PotentialSpec> terms) {
    PotentialSpec s;
    s.kind = PotentialKind::sum;
    s.terms = std::move(terms);
    return s;
}

bool has_decay_envelope(const PotentialSpec& spec) {
    switch (spec.kind) {
        case PotentialKind::power_oscillatory:
        case PotentialKind::wigner_von_neumann:
        case PotentialKind::exponential:
        case PotentialKind::random_decaying:
            return true;
        default:
            return false;
    }
}

double envelope_bound(const PotentialSpec& spec, double x) {
    if (!has_decay_envelope(spec)) throw DomainError("envelope_bound: kind has no decay envelope");
    return std::abs(spec.amplitude) * std::pow(1.0 + std::abs(x), -spec.decay_exponent);
}

bool is_periodic(const PotentialSpec& spec) { return spec.kind == PotentialKind::periodic_table; }

double period_of(const PotentialSpec& spec) {
    if (!is_periodic(spec)) throw DomainError("period_of: potential is not periodic");
    return spec.period;
}

PotentialSpec reflected(const PotentialSpec& spec) {
    PotentialSpec s = spec;
    s.reflected = !s.reflected;
    for (auto& t : s.terms) t = acspec::reflected(t);
    return s;
}

Potential::Potential(PotentialSpec spec) : spec_(std::move(spec)) {
    if (spec_.kind == PotentialKind::random_decaying) {
        std::mt19937_64 rng(spec_.seed);
        std::uniform_real_distribution<double> freq(0.5, 3.5);
        std::uniform_real_distribution<double> ph(0.0, 2.0 * M_PI);
        bank_freq_.resize(kRandomBankSize);
        bank_phase_.resize(kRandomBankSize);
        for (int i = 0; i < kRandomBankSize; ++i) {
            bank_freq_[i] = freq(rng);
            bank_phase_[i] = ph(rng);
        }
    } else if (spec_.kind == PotentialKind::sum) {
        terms_.reserve(spec_.terms.size());
        for (const auto& t : spec_.terms) terms_.emplace_back(t);
    } else if (spec_.kind == PotentialKind::tabulated) {
        if (spec_.xs.size() != spec_.vs.size() || spec_.xs.size() < 2)
            throw ConfigError("tabulated potential needs >= 2 matching samples");
    }
}

double Potential::operator()(double x) const {
    if (spec_.reflected) x = -x;
    switch (spec_.kind) {
        case PotentialKind::power_oscillatory:
            return spec_.amplitude * std::cos(spec_.frequency * x + spec_.phase) *
                   std::pow(1.0 + std::abs(x), -spec_.decay_exponent);
        case PotentialKind::wigner_von_neumann:
            return spec_.amplitude * std::sin(2.0 * spec_.frequency * x) / (1.0 + std::abs(x));
        case PotentialKind::exponential:
            return spec_.amplitude * std::exp(-spec_.decay_exponent * std::abs(x)) *
                   std::cos(spec_.frequency * x + spec_.phase);
        case PotentialKind::periodic_table:
            return spec_.amplitude * std::cos(2.0 * M_PI * x / spec_.period + spec_.phase);
        case PotentialKind::random_decaying: {
            double s = 0.0;
            for (std::size_t i = 0; i < bank_freq_.size(); ++i)
                s += std::cos(bank_freq_[i] * x + bank_phase_[i]);
            s /= double(bank_freq_.size());
            return spec_.amplitude * s * std::pow(1.0 + std::abs(x), -spec_.decay_exponent);
        }
        case PotentialKind::tabulated: {
            const auto& xs = spec_.xs;
            if (x < xs.front() || x > xs.back()) return 0.0;
            auto it = std::upper_bound(xs.begin(), xs.end(), x);
            if (it == xs.begin()) return spec_.vs.front();
            if (it == xs.end()) return spec_.vs.back();
            const std::size_t i = std::size_t(it - xs.begin()) - 1;
            const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
            return (1.0 - t) * spec_.vs[i] + t * spec_.vs[i + 1];
        }
        case PotentialKind::sum: {
            double s = 0.0;
            for (const auto& t : terms_) s += t(x);
            return s;
        }
    }
    throw ConfigError("unknown potential kind tag");
}

double eval_potential(const PotentialSpec& spec, double x) { return Potential(spec)(x); }

nlohmann::ordered_json to_json(const PotentialSpec& spec) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(spec.kind);
    switch (spec.kind) {
        case PotentialKind::tabulated:
            j["xs"] = spec.xs;
            j["vs"] = spec.vs;
            break;
        case PotentialKind::sum: {
            nlohmann::ordered_json arr = nlohmann::ordered_json::array();
            for (const auto& t : spec.terms) arr.push_back(to_json(t));
            j["terms"] = arr;
            break;
        }
        default:
            j["amplitude"] = spec.amplitude;
            j["decay_exponent"] = spec.decay_exponent;
            j["frequency"] = spec.frequency;
            j["phase"] = spec.phase;
            if (spec.kind == PotentialKind::periodic_table) j["period"] = spec.period;
            if (spec.kind == PotentialKind::random_decaying) j["seed"] = spec.seed;
            break;
    }
    if (spec.reflected) j["reflected"] = true;
    return j;
}

PotentialSpec potential_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("potential JSON needs a \"kind\" discriminator");
    PotentialSpec s;
    s.kind = kind_from_name(j.at("kind").get<std::string>());
    switch (s.kind) {
        case PotentialKind::tabulated:
            s.xs = j.at("xs").get<std::vector<double>>();
            s.vs = j.at("vs").get<std::vector<double>>();
            if (s.xs.size() != s.vs.size() || s.xs.size() < 2)
                throw ConfigError("tabulated potential needs >= 2 matching samples");
            break;
        case PotentialKind::sum:
            for (const auto& t : j.at("terms")) s.terms.push_back(potential_from_json(t));
            break;
        default:
            s.amplitude = j.value("amplitude", 0.0);
            s.decay_exponent = j.value("decay_exponent", 0.0);
            s.frequency = j.value("frequency", 0.0);
            s.phase = j.value("phase", 0.0);
            s.period = j.value("period", 0.0);
            s.seed = j.value("seed", std::uint64_t(0));
            if (s.kind == PotentialKind::periodic_table && s.period <= 0)
                throw ConfigError("periodic potential needs period > 0");
            break;
    }
    s.reflected = j.value("reflected", false);
    return s;
}

PotentialSpec tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open potential CSV: " + path);
    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, v;
        if (!(ss >> x >> v)) throw ConfigError("bad CSV line in " + path + ": " + line);
        xs.push_back(x);
        vs.push_back(v);
    }
    return PotentialSpec::tabulated(std::move(xs), std::move(vs));
}

} // namespace acspec
