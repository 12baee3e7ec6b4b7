#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "acspec/harness.hpp"

using namespace acspec;

namespace {

ExperimentConfig small_free() {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::free_halfline;
    cfg.perturbation = PotentialSpec::power_oscillatory(1.0, 0.8, 1.0);
    cfg.n_lambda = 4;
    cfg.pipeline.x_max = 4000.0;
    cfg.pipeline.fit_lo = 50.0;
    cfg.pipeline.fit_hi = 1000.0;
    cfg.pred_x = 500.0;
    cfg.ref_x = 50.0;
    cfg.mode = par::Mode::serial;
    return cfg;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("compare_prediction: trajectory equal to prediction gives flat ratio") {
    const FreeBasis basis(1.0);
    PipelineConfig p;
    p.x_max = 300.0;
    p.fit_lo = 5.0;
    p.fit_hi = 60.0;
    const CoefficientGrid c = compute_coefficients(
        Potential(PotentialSpec::power_oscillatory(1.0, 0.8, 1.0)), basis, p);
    std::vector<double> grid = geomspace(10.0, 200.0, 12);
    const Prediction pred = predict(Prediction::Form::stage1, basis, c, nullptr, grid);
    Trajectory t;
    t.x = pred.x;
    for (std::size_t i = 0; i < pred.x.size(); ++i)
        t.states.push_back(State2{pred.phi[i], pred.dphi[i]});
    const LambdaRecord rec = compare_prediction(t, pred, basis.wron(), 10.0, 0.95, 1.05);
    CHECK(!rec.failed);
    CHECK(rec.ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rec.err_exponent == -99.0);
    CHECK(rec.pass);
}

TEST_CASE("free experiment with zero perturbation passes everywhere") {
    ExperimentConfig cfg = small_free();
    cfg.perturbation = PotentialSpec::zero();
    cfg.pipeline.x_max = 1500.0;
    const ComparisonReport rep = run_experiment(cfg);
    REQUIRE(rep.records.size() == 4);
    for (const auto& r : rep.records) {
        REQUIRE(!r.failed);
        CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.pass);
    }
    CHECK(rep.pass_fraction == 1.0);
    CHECK(rep.passed);
}

TEST_CASE("short-range perturbation converges fast") {
    ExperimentConfig cfg = small_free();
    cfg.perturbation = PotentialSpec::exponential(1.0, 1.0);
    cfg.pipeline.x_max = 1500.0;
    cfg.pipeline.fit_lo = 5.0;
    cfg.pipeline.fit_hi = 100.0;
    cfg.n_lambda = 2;
    cfg.pred_x = 1000.0;
    cfg.ref_x = 100.0;
    cfg.pipeline.dx = 0.04;
    const ComparisonReport rep = run_experiment(cfg);
    for (const auto& r : rep.records) {
        REQUIRE(!r.failed);
        CHECK(std::abs(r.ratio - 1.0) < 1e-3);
    }
}

TEST_CASE("slowly decaying oscillatory perturbation stays within the ratio window") {
    ExperimentConfig cfg = small_free();
    const ComparisonReport rep = run_experiment(cfg);
    std::size_t ok = 0;
    for (const auto& r : rep.records) {
        REQUIRE(!r.failed);
        CHECK(r.form == "stage1"); // alpha = 0.8 > 3/4
        CHECK(r.beta_q < 0.0);
        if (r.pass) ++ok;
    }
    CHECK(ok >= 3); // >= 90% nominal; 4-point grid tolerates one outlier
}

TEST_CASE("stage-two regime: alpha = 0.7 free case passes the ratio window") {
    ExperimentConfig cfg = small_free();
    cfg.perturbation = PotentialSpec::power_oscillatory(1.0, 0.7, 1.0);
    cfg.n_lambda = 10;
    cfg.pipeline.x_max = 8000.0;
    cfg.pipeline.fit_lo = 50.0;
    cfg.pipeline.fit_hi = 2000.0;
    cfg.pred_x = 1000.0;
    cfg.ref_x = 100.0;
    const ComparisonReport rep = run_experiment(cfg);
    std::size_t ok = 0;
    for (const auto& r : rep.records) {
        REQUIRE(!r.failed);
        CHECK(r.form == "stage2"); // alpha = 0.7 < 3/4
        if (r.pass) ++ok;
    }
    CHECK(ok >= 9);
}

TEST_CASE("full line scan on an even potential produces identical halves") {
    ExperimentConfig cfg = small_free();
    cfg.kind = ExperimentKind::full_line_free;
    cfg.n_lambda = 3;
    const FullLineReport fl = full_line_scan(cfg);
    REQUIRE(fl.right.records.size() == fl.left.records.size());
    for (std::size_t i = 0; i < fl.right.records.size(); ++i) {
        CHECK(fl.right.records[i].ratio ==
              doctest::Approx(fl.left.records[i].ratio).epsilon(1e-12));
        CHECK(fl.right.records[i].pass == fl.left.records[i].pass);
    }
    CHECK(fl.both_pass_fraction == fl.union_pass_fraction);
}

TEST_CASE("perturbation supported on x > 0 leaves the left half free") {
    ExperimentConfig cfg = small_free();
    cfg.kind = ExperimentKind::full_line_free;
    cfg.n_lambda = 2;
    cfg.pipeline.x_max = 1500.0;
    // tabulated: nonzero only on (1, 30)
    std::vector<double> xs, vs;
    for (double x = 1.0; x <= 30.0; x += 0.25) {
        xs.push_back(x);
        vs.push_back(0.3 * std::cos(2.0 * x) / (1.0 + x));
    }
    cfg.perturbation = PotentialSpec::tabulated(xs, vs);
    const FullLineReport fl = full_line_scan(cfg);
    for (const auto& r : fl.left.records) {
        REQUIRE(!r.failed);
        CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-6)); // zero perturbation side
        CHECK(r.pass);
    }
}

TEST_CASE("experiment reports are byte identical across reruns") {
    namespace fs = std::filesystem;
    ExperimentConfig cfg = small_free();
    cfg.n_lambda = 2;
    cfg.pipeline.x_max = 1500.0;
    cfg.out_dir = "harness_rerun_a";
    run_experiment(cfg);
    cfg.out_dir = "harness_rerun_b";
    run_experiment(cfg);
    CHECK(slurp("harness_rerun_a/records.csv") == slurp("harness_rerun_b/records.csv"));
    // summaries differ only in the echoed config? they must not differ at all
    auto a = slurp("harness_rerun_a/summary.json");
    auto b = slurp("harness_rerun_b/summary.json");
    CHECK(a == b);
    fs::remove_all("harness_rerun_a");
    fs::remove_all("harness_rerun_b");
}

TEST_CASE("every energy appears exactly once in the report") {
    ExperimentConfig cfg = small_free();
    cfg.n_lambda = 5;
    cfg.pipeline.x_max = 1500.0;
    const ComparisonReport rep = run_experiment(cfg);
    const EnergyGrid g = make_energy_grid(cfg.lambda_lo, cfg.lambda_hi, cfg.n_lambda, "S");
    REQUIRE(rep.records.size() == g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i)
        CHECK(rep.records[i].lambda == g.values[i]);
}

TEST_CASE("experiment config JSON round trip") {
    ExperimentConfig cfg = small_free();
    cfg.kind = ExperimentKind::operator_norm;
    cfg.opnorm_X = {100.0, 200.0};
    cfg.symbol_margin = 0.07;
    const auto j = to_json(cfg);
    const ExperimentConfig back = experiment_config_from_json(j);
    CHECK(back.kind == cfg.kind);
    CHECK(back.opnorm_X == cfg.opnorm_X);
    CHECK(back.symbol_margin == cfg.symbol_margin);
    CHECK(back.pipeline.x_max == cfg.pipeline.x_max);
    CHECK_THROWS_AS(experiment_config_from_json(nlohmann::json{{"kind", "bogus"}}),
                    ConfigError);
}

TEST_CASE("operator-norm experiment sizes the symbol window independently") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::operator_norm;
    cfg.perturbation = PotentialSpec::power_oscillatory(1.0, 0.55, 1.0);
    cfg.kernel_k_lo = 1.0;
    cfg.kernel_k_hi = 2.0;
    cfg.opnorm_X = {40.0, 80.0}; // much smaller than the symbol window
    cfg.opnorm_x_per_unit = 6.0;
    cfg.mode = par::Mode::serial;
    const ComparisonReport rep = run_experiment(cfg);
    REQUIRE(rep.symbol.has_value());
    CHECK(rep.symbol->fit_dx <= -0.45);
    CHECK(rep.symbol->pass);
    CHECK(rep.passed);
}

TEST_CASE("overlapping energy sets are rejected") {
    ExperimentConfig cfg = small_free();
    EnergyGrid a = make_energy_grid(1.0, 2.0, 4, "A");
    EnergyGrid b;
    b.values = {a.values[1]};
    b.label = "B";
    cfg.energy_sets = {a, b};
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("bad band index is a config error") {
    ExperimentConfig cfg = small_free();
    cfg.kind = ExperimentKind::periodic_halfline;
    cfg.background = PotentialSpec::periodic(2.0, 2.0 * M_PI);
    cfg.band_index = 99;
    cfg.n_lambda = 2;
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}
