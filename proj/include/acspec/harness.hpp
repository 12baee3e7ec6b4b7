#ifndef ACSPEC_HARNESS_HPP
#define ACSPEC_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "acspec/asymptotics.hpp"
#include "acspec/opnorms.hpp"

#include "json.hpp"

namespace acspec {

enum class ExperimentKind {
    free_halfline,      // free background, two-stage pipeline + ODE comparison
    periodic_halfline,  // periodic background, band-interior pipeline
    full_line_free, // whole-line free: V(x) and V(-x) half-line runs
    full_line_periodic, // whole-line periodic
    maximal_bound,   // maximal-function bound ensembles
    operator_norm       // L2 operator-norm plateau + symbol-class check
};

std::string kind_name(ExperimentKind k);
ExperimentKind experiment_kind_from_name(const std::string& name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::free_halfline;
    PotentialSpec background = PotentialSpec::zero();
    PotentialSpec perturbation = PotentialSpec::zero();

    // energy set S (single grid) or an explicit partition {S_i}
    double lambda_lo = 0.5, lambda_hi = 4.0;
    std::size_t n_lambda = 32;
    std::vector<EnergyGrid> energy_sets;

    int band_index = 1;            // periodic runs: which band to work in
    double band_margin_frac = 0.05; // edge exclusion, fraction of the band width
    double band_scan_lo = -2.0, band_scan_hi = 10.0;
    double band_tol = 1e-8;

    PipelineConfig pipeline;
    TailMethod tail_method = TailMethod::parts;        // stage one
    TailMethod tail_method_q1 = TailMethod::direct;    // stage two
    int force_form = 0; // 0 = by decay exponent, 1 = stage1, 2 = stage2

    double pred_x = 1000.0;  // comparison checkpoint
    double ref_x = 100.0;    // projection reference point
    double ratio_lo = 0.95, ratio_hi = 1.05;
    double pass_fraction_required = 0.9;
    IntegratorConfig ode{1e-9, 1e-11, 0.5, {}};

    // maximal_bound
    double maximal_q = 4.0;
    std::size_t maximal_ensemble = 100;
    std::vector<int> maximal_support_powers = {0, 1, 2, 3, 4, 5, 6};
    double kernel_k_lo = 1.0, kernel_k_hi = 5.0;
    std::size_t maximal_n_k = 160;

    // operator_norm
    std::vector<double> opnorm_X = {250.0, 500.0, 1000.0};
    double opnorm_x_per_unit = 8.0;
    double opnorm_k_per_x = 0.4; // k nodes = k_per_x * X
    double opnorm_growth_limit = 0.10;
    double symbol_rho = 0.5, symbol_sigma = 0.5, symbol_margin = 0.05;

    bool dirichlet_launch = false; // whole-line runs: u(0) = 0, u'(0) = 1
    bool emit_curves = false;      // per-energy tail-curve CSVs alongside reports

    std::uint64_t seed = 1;
    std::string out_dir; // empty = no files
    par::Mode mode = par::default_mode();
};

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);

struct LambdaRecord {
    double lambda = 0;
    std::string set;      // energy-set label
    double ratio = 0;     // |c+(pred_x)| / |c+(ref_x)|
    double err_exponent = 0; // fitted from |r - 1|; -99 when r is flat 1
    double beta_q = 0, beta_q1 = 0;
    bool q_converged = false, q1_converged = false;
    std::string form; // stage1 / stage2
    bool pass = false;
    bool failed = false;
    std::string error;
};

struct ComparisonReport {
    ExperimentKind kind = ExperimentKind::free_halfline;
    std::vector<LambdaRecord> records;
    double pass_fraction = 0;
    double required_fraction = 0;
    bool passed = false;

    std::optional<MaximalExperimentReport> maximal;
    std::optional<std::vector<L2NormEstimate>> opnorm;
    std::optional<SymbolClassReport> symbol;
    std::vector<Band> bands; // periodic runs
};

// Projects the numerical solution onto the (phi, conj phi) basis via
// Wronskians and reports the coefficient-magnitude drift over the tail
// window. w is the basis Wronskian (denominator of the projection).
LambdaRecord compare_prediction(const Trajectory& traj, const Prediction& pred, cplx w,
                                double ref_x, double ratio_lo, double ratio_hi);

ComparisonReport run_experiment(const ExperimentConfig& cfg);

struct FullLineReport {
    ComparisonReport right; // x -> +inf on V(x)
    ComparisonReport left;  // x -> -inf, run on V(-x)
    double both_pass_fraction = 0;  // multiplicity two: passing on both sides
    double union_pass_fraction = 0;
    bool passed = false;
};

FullLineReport full_line_scan(const ExperimentConfig& cfg);

void write_report(const ComparisonReport& rep, const ExperimentConfig& cfg,
                  const std::string& dir);

} // namespace acspec

#endif
