#include "acspec/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace acspec {

std::string kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::free_halfline: return "free_halfline";
        case ExperimentKind::periodic_halfline: return "periodic_halfline";
        case ExperimentKind::full_line_free: return "full_line_free";
        case ExperimentKind::full_line_periodic: return "full_line_periodic";
        case ExperimentKind::maximal_bound: return "maximal_bound";
        case ExperimentKind::operator_norm: return "operator_norm";
    }
    throw ConfigError("unknown experiment kind");
}

ExperimentKind experiment_kind_from_name(const std::string& name) {
    if (name == "free_halfline") return ExperimentKind::free_halfline;
    if (name == "periodic_halfline") return ExperimentKind::periodic_halfline;
    if (name == "full_line_free") return ExperimentKind::full_line_free;
    if (name == "full_line_periodic") return ExperimentKind::full_line_periodic;
    if (name == "maximal_bound") return ExperimentKind::maximal_bound;
    if (name == "operator_norm") return ExperimentKind::operator_norm;
    throw ConfigError("unknown experiment kind: " + name);
}

nlohmann::ordered_json to_json(const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(cfg.kind);
    j["background"] = to_json(cfg.background);
    j["perturbation"] = to_json(cfg.perturbation);
    j["lambda_lo"] = cfg.lambda_lo;
    j["lambda_hi"] = cfg.lambda_hi;
    j["n_lambda"] = cfg.n_lambda;
    j["band_index"] = cfg.band_index;
    j["band_margin_frac"] = cfg.band_margin_frac;
    j["band_scan_lo"] = cfg.band_scan_lo;
    j["band_scan_hi"] = cfg.band_scan_hi;
    j["band_tol"] = cfg.band_tol;
    j["x_max"] = cfg.pipeline.x_max;
    j["dx"] = cfg.pipeline.dx;
    j["fit_lo"] = cfg.pipeline.fit_lo;
    j["fit_hi"] = cfg.pipeline.fit_hi;
    j["tail_method"] = cfg.tail_method == TailMethod::parts ? "parts" : "direct";
    j["tail_method_q1"] = cfg.tail_method_q1 == TailMethod::parts ? "parts" : "direct";
    j["force_form"] = cfg.force_form;
    j["pred_x"] = cfg.pred_x;
    j["ref_x"] = cfg.ref_x;
    j["ratio_lo"] = cfg.ratio_lo;
    j["ratio_hi"] = cfg.ratio_hi;
    j["pass_fraction_required"] = cfg.pass_fraction_required;
    j["ode_rtol"] = cfg.ode.rtol;
    j["ode_atol"] = cfg.ode.atol;
    j["maximal_q"] = cfg.maximal_q;
    j["maximal_ensemble"] = cfg.maximal_ensemble;
    j["maximal_support_powers"] = cfg.maximal_support_powers;
    j["kernel_k_lo"] = cfg.kernel_k_lo;
    j["kernel_k_hi"] = cfg.kernel_k_hi;
    j["maximal_n_k"] = cfg.maximal_n_k;
    j["opnorm_X"] = cfg.opnorm_X;
    j["opnorm_x_per_unit"] = cfg.opnorm_x_per_unit;
    j["opnorm_k_per_x"] = cfg.opnorm_k_per_x;
    j["opnorm_growth_limit"] = cfg.opnorm_growth_limit;
    j["symbol_rho"] = cfg.symbol_rho;
    j["symbol_sigma"] = cfg.symbol_sigma;
    j["symbol_margin"] = cfg.symbol_margin;
    j["seed"] = cfg.seed;
    return j;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    try {
        if (j.contains("kind")) cfg.kind = experiment_kind_from_name(j.at("kind"));
        if (j.contains("background")) cfg.background = potential_from_json(j.at("background"));
        if (j.contains("perturbation"))
            cfg.perturbation = potential_from_json(j.at("perturbation"));
        cfg.lambda_lo = j.value("lambda_lo", cfg.lambda_lo);
        cfg.lambda_hi = j.value("lambda_hi", cfg.lambda_hi);
        cfg.n_lambda = j.value("n_lambda", cfg.n_lambda);
        cfg.band_index = j.value("band_index", cfg.band_index);
        cfg.band_margin_frac = j.value("band_margin_frac", cfg.band_margin_frac);
        cfg.band_scan_lo = j.value("band_scan_lo", cfg.band_scan_lo);
        cfg.band_scan_hi = j.value("band_scan_hi", cfg.band_scan_hi);
        cfg.band_tol = j.value("band_tol", cfg.band_tol);
        cfg.pipeline.x_max = j.value("x_max", cfg.pipeline.x_max);
        cfg.pipeline.dx = j.value("dx", cfg.pipeline.dx);
        cfg.pipeline.fit_lo = j.value("fit_lo", cfg.pipeline.fit_lo);
        cfg.pipeline.fit_hi = j.value("fit_hi", cfg.pipeline.fit_hi);
        if (j.value("tail_method", std::string("parts")) == std::string("direct"))
            cfg.tail_method = TailMethod::direct;
        if (j.value("tail_method_q1", std::string("direct")) == std::string("parts"))
            cfg.tail_method_q1 = TailMethod::parts;
        cfg.force_form = j.value("force_form", cfg.force_form);
        cfg.pred_x = j.value("pred_x", cfg.pred_x);
        cfg.ref_x = j.value("ref_x", cfg.ref_x);
        cfg.ratio_lo = j.value("ratio_lo", cfg.ratio_lo);
        cfg.ratio_hi = j.value("ratio_hi", cfg.ratio_hi);
        cfg.pass_fraction_required =
            j.value("pass_fraction_required", cfg.pass_fraction_required);
        cfg.ode.rtol = j.value("ode_rtol", cfg.ode.rtol);
        cfg.ode.atol = j.value("ode_atol", cfg.ode.atol);
        cfg.maximal_q = j.value("maximal_q", cfg.maximal_q);
        cfg.maximal_ensemble = j.value("maximal_ensemble", cfg.maximal_ensemble);
        if (j.contains("maximal_support_powers"))
            cfg.maximal_support_powers =
                j.at("maximal_support_powers").get<std::vector<int>>();
        cfg.kernel_k_lo = j.value("kernel_k_lo", cfg.kernel_k_lo);
        cfg.kernel_k_hi = j.value("kernel_k_hi", cfg.kernel_k_hi);
        cfg.maximal_n_k = j.value("maximal_n_k", cfg.maximal_n_k);
        if (j.contains("opnorm_X")) cfg.opnorm_X = j.at("opnorm_X").get<std::vector<double>>();
        cfg.opnorm_x_per_unit = j.value("opnorm_x_per_unit", cfg.opnorm_x_per_unit);
        cfg.opnorm_k_per_x = j.value("opnorm_k_per_x", cfg.opnorm_k_per_x);
        cfg.opnorm_growth_limit = j.value("opnorm_growth_limit", cfg.opnorm_growth_limit);
        cfg.symbol_rho = j.value("symbol_rho", cfg.symbol_rho);
        cfg.symbol_sigma = j.value("symbol_sigma", cfg.symbol_sigma);
        cfg.symbol_margin = j.value("symbol_margin", cfg.symbol_margin);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad experiment config: ") + e.what());
    }
    return cfg;
}

LambdaRecord compare_prediction(const Trajectory& traj, const Prediction& pred, cplx w,
                                double ref_x, double ratio_lo, double ratio_hi) {
    if (traj.x.size() != pred.x.size())
        throw DomainError("compare_prediction: trajectory and prediction grids misaligned");
    if (std::abs(w) < 1e-12)
        throw DomainError("compare_prediction: degenerate prediction basis");

    // c+(x) = W[u, conj(phi)] / W[phi, conj(phi)]
    std::vector<double> xs, mags;
    for (std::size_t i = 0; i < traj.x.size(); ++i) {
        if (std::abs(traj.x[i] - pred.x[i]) > 1e-9 * (1.0 + std::abs(traj.x[i])))
            throw DomainError("compare_prediction: grid mismatch at index " +
                              std::to_string(i));
        if (traj.x[i] < ref_x) continue;
        const cplx num = traj.states[i].u * std::conj(pred.dphi[i]) -
                         traj.states[i].du * std::conj(pred.phi[i]);
        xs.push_back(traj.x[i]);
        mags.push_back(std::abs(num / w));
    }
    LambdaRecord rec;
    if (xs.size() < 2) {
        rec.failed = true;
        rec.error = "comparison window holds fewer than two samples";
        return rec;
    }
    if (mags.front() < 1e-10) {
        rec.failed = true;
        rec.error = "projection coefficient vanishes at the reference point";
        return rec;
    }
    std::vector<double> rx, rdev;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = mags[i] / mags.front();
        if (std::abs(r - 1.0) > 1e-12) {
            rx.push_back(xs[i]);
            rdev.push_back(std::abs(r - 1.0));
        }
    }
    rec.ratio = mags.back() / mags.front();
    rec.err_exponent = rx.size() >= 4 ? loglog_fit(rx, rdev).slope : -99.0;
    rec.pass = rec.ratio >= ratio_lo && rec.ratio <= ratio_hi;
    return rec;
}

namespace {

std::vector<EnergyGrid> energy_sets_for(const ExperimentConfig& cfg,
                                        const std::vector<Band>& bands) {
    if (!cfg.energy_sets.empty()) return cfg.energy_sets;
    if (cfg.kind == ExperimentKind::periodic_halfline ||
        cfg.kind == ExperimentKind::full_line_periodic) {
        if (bands.empty()) throw ConfigError("periodic experiment found no bands in range");
        const std::size_t want = std::size_t(std::max(1, cfg.band_index));
        if (want > bands.size())
            throw ConfigError("band_index exceeds the number of bands found");
        const Band& b = bands[want - 1];
        const double margin = cfg.band_margin_frac * b.width();
        EnergyGrid g = make_energy_grid(b.lo + margin, b.hi - margin, cfg.n_lambda,
                                        "band-" + std::to_string(b.index));
        return {g};
    }
    return {make_energy_grid(cfg.lambda_lo, cfg.lambda_hi, cfg.n_lambda, "S")};
}

LambdaRecord pipeline_record(const ExperimentConfig& cfg, const Potential& full,
                             const SolutionBasis& basis, const std::string& set_label) {
    LambdaRecord rec;
    rec.lambda = basis.energy();
    rec.set = set_label;
    try {
        const CoefficientGrid coeffs =
            compute_coefficients(Potential(cfg.perturbation), basis, cfg.pipeline);
        const TailIntegral qt = q_tail(coeffs, cfg.tail_method, cfg.pipeline);
        rec.beta_q = qt.beta;
        rec.q_converged = qt.converged;
        const SecondStage s2 =
            compute_second_stage(coeffs, cfg.tail_method_q1, cfg.pipeline);
        rec.beta_q1 = s2.q1.beta;
        rec.q1_converged = s2.q1.converged;
        if (cfg.emit_curves && !cfg.out_dir.empty()) {
            std::filesystem::create_directories(cfg.out_dir);
            std::ofstream out(cfg.out_dir + "/tails_" + format_double(basis.energy()) +
                              ".csv");
            out << "x,abs_q,abs_q1\n";
            for (std::size_t i = 0; i < qt.x.size() && i < s2.q1.x.size(); ++i)
                out << format_double(qt.x[i]) << ',' << format_double(std::abs(qt.value[i]))
                    << ',' << format_double(std::abs(s2.q1.value[i])) << '\n';
        }

        Prediction::Form form = Prediction::Form::stage2;
        if (cfg.force_form == 1)
            form = Prediction::Form::stage1;
        else if (cfg.force_form == 0 && has_decay_envelope(cfg.perturbation) &&
                 cfg.perturbation.decay_exponent > 0.75)
            form = Prediction::Form::stage1;
        rec.form = form == Prediction::Form::stage1 ? "stage1" : "stage2";

        std::vector<double> grid = geomspace(cfg.ref_x, cfg.pred_x, 25);
        grid.insert(grid.begin(), 0.0);
        const Prediction pred = predict(form, basis, coeffs, &s2, grid);

        IntegratorConfig ocfg = cfg.ode;
        ocfg.sample_grid = grid;
        const State2 init =
            cfg.dirichlet_launch ? State2{0.0, 1.0} : basis.eval(0.0);
        const Trajectory traj =
            integrate_ivp(full, basis.energy(), 0.0, cfg.pred_x, init, ocfg);
        if (traj.x.size() != grid.size() + 1 && traj.x.size() != grid.size())
            throw NumericalError("comparison trajectory misses sample points");
        Trajectory aligned;
        for (std::size_t i = 0; i < traj.x.size(); ++i) {
            // keep exactly the requested grid (drop duplicate x = 0 start)
            if (!aligned.x.empty() && traj.x[i] == aligned.x.back()) continue;
            aligned.x.push_back(traj.x[i]);
            aligned.states.push_back(traj.states[i]);
        }
        LambdaRecord cmp =
            compare_prediction(aligned, pred, basis.wron(), cfg.ref_x, cfg.ratio_lo,
                               cfg.ratio_hi);
        rec.ratio = cmp.ratio;
        rec.err_exponent = cmp.err_exponent;
        rec.pass = cmp.pass;
        rec.failed = cmp.failed;
        rec.error = cmp.error;
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.pass = false;
        rec.error = e.what();
    }
    return rec;
}

ComparisonReport run_lambda_experiment(const ExperimentConfig& cfg) {
    ComparisonReport rep;
    rep.kind = cfg.kind;
    rep.required_fraction = cfg.pass_fraction_required;

    const bool periodic = cfg.kind == ExperimentKind::periodic_halfline ||
                          cfg.kind == ExperimentKind::full_line_periodic;
    const Potential bg(cfg.background);
    const Potential full(PotentialSpec::sum_of({cfg.background, cfg.perturbation}));

    if (periodic) {
        rep.bands = find_bands(bg, period_of(cfg.background), cfg.band_scan_lo,
                               cfg.band_scan_hi, cfg.band_tol, cfg.ode, 2400, cfg.mode);
    }
    const std::vector<EnergyGrid> sets = energy_sets_for(cfg, rep.bands);

    struct Job {
        double lambda;
        std::string set;
    };
    std::vector<Job> jobs;
    for (const auto& g : sets)
        for (double l : g.values) jobs.push_back({l, g.label});
    rep.records.resize(jobs.size());

    par::parallel_for(jobs.size(), cfg.mode, [&](std::size_t i) {
        LambdaRecord rec;
        try {
            if (periodic) {
                BlochBasis basis(
                    bloch_function(bg, period_of(cfg.background), jobs[i].lambda, cfg.ode));
                rec = pipeline_record(cfg, full, basis, jobs[i].set);
            } else {
                FreeBasis basis(jobs[i].lambda);
                rec = pipeline_record(cfg, full, basis, jobs[i].set);
            }
        } catch (const std::exception& e) {
            rec.lambda = jobs[i].lambda;
            rec.set = jobs[i].set;
            rec.failed = true;
            rec.error = e.what();
        }
        rep.records[i] = rec;
    });

    std::size_t passed = 0;
    for (const auto& r : rep.records) passed += r.pass ? 1 : 0;
    rep.pass_fraction = rep.records.empty() ? 0.0 : double(passed) / double(rep.records.size());
    rep.passed = rep.pass_fraction >= rep.required_fraction;
    return rep;
}

ComparisonReport run_maximal(const ExperimentConfig& cfg) {
    ComparisonReport rep;
    rep.kind = cfg.kind;
    const KernelEvaluator kernel(KernelSpec::fourier(cfg.kernel_k_lo, cfg.kernel_k_hi), 1.0);
    const double q = cfg.maximal_q;
    const double p = q / (q - 1.0);
    rep.maximal = maximal_bound_experiment(kernel, p, q, cfg.maximal_ensemble,
                                           cfg.maximal_support_powers, cfg.seed,
                                           cfg.maximal_n_k, cfg.mode);
    rep.passed = rep.maximal->pass;
    rep.pass_fraction = rep.passed ? 1.0 : 0.0;
    rep.required_fraction = 1.0;
    return rep;
}

ComparisonReport run_opnorm(const ExperimentConfig& cfg) {
    ComparisonReport rep;
    rep.kind = cfg.kind;
    const double x_top = *std::max_element(cfg.opnorm_X.begin(), cfg.opnorm_X.end());
    KernelEvaluator kernel(
        KernelSpec::free_phase(cfg.perturbation, cfg.kernel_k_lo, cfg.kernel_k_hi),
        x_top * 1.05 + 2.0);

    std::vector<L2NormEstimate> ests;
    for (double X : cfg.opnorm_X) {
        const std::size_t n_k = std::size_t(std::max(32.0, cfg.opnorm_k_per_x * X));
        ests.push_back(
            estimate_l2_norm(kernel, X, cfg.opnorm_x_per_unit, n_k, cfg.mode, true));
    }
    bool growth_ok = true;
    for (std::size_t i = 1; i < ests.size(); ++i) {
        const double g = (ests[i].value - ests[i - 1].value) / ests[i - 1].value;
        if (g > cfg.opnorm_growth_limit) growth_ok = false;
    }
    rep.opnorm = ests;
    // the symbol window is independent of the norm-plateau domains
    const double symbol_x_hi = 1000.0;
    rep.symbol = check_symbol_class(
        make_free_phase_symbol(cfg.perturbation, std::max(symbol_x_hi, x_top)),
        cfg.kernel_k_lo, cfg.kernel_k_hi, cfg.symbol_rho, cfg.symbol_sigma,
        cfg.symbol_margin, 1.0, symbol_x_hi);
    rep.passed = growth_ok && rep.symbol->pass;
    rep.pass_fraction = rep.passed ? 1.0 : 0.0;
    rep.required_fraction = 1.0;
    return rep;
}

} // namespace

namespace {

void validate_config(const ExperimentConfig& cfg) {
    const bool periodic = cfg.kind == ExperimentKind::periodic_halfline ||
                          cfg.kind == ExperimentKind::full_line_periodic;
    if (periodic && !is_periodic(cfg.background))
        throw ConfigError("periodic experiment needs a periodic background potential");
    if (!(cfg.lambda_lo < cfg.lambda_hi) || cfg.n_lambda == 0)
        throw ConfigError("experiment needs lambda_lo < lambda_hi and n_lambda > 0");
    for (std::size_t i = 0; i < cfg.energy_sets.size(); ++i) {
        const auto& a = cfg.energy_sets[i].values;
        if (!std::is_sorted(a.begin(), a.end()))
            throw ConfigError("energy set " + cfg.energy_sets[i].label + " is not sorted");
        for (std::size_t j = i + 1; j < cfg.energy_sets.size(); ++j)
            for (double v : cfg.energy_sets[j].values)
                if (std::binary_search(a.begin(), a.end(), v))
                    throw ConfigError("energy sets overlap at lambda = " + format_double(v));
    }
}

} // namespace

ComparisonReport run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    ComparisonReport rep;
    switch (cfg.kind) {
        case ExperimentKind::free_halfline:
        case ExperimentKind::periodic_halfline:
            rep = run_lambda_experiment(cfg);
            break;
        case ExperimentKind::full_line_free:
        case ExperimentKind::full_line_periodic: {
            const FullLineReport fl = full_line_scan(cfg);
            rep.kind = cfg.kind;
            rep.bands = fl.right.bands;
            rep.records = fl.right.records;
            for (std::size_t i = 0; i < rep.records.size(); ++i) {
                rep.records[i].set = "both";
                rep.records[i].pass =
                    fl.right.records[i].pass && fl.left.records[i].pass;
            }
            rep.pass_fraction = fl.both_pass_fraction;
            rep.required_fraction = cfg.pass_fraction_required;
            rep.passed = fl.passed;
            break;
        }
        case ExperimentKind::maximal_bound:
            rep = run_maximal(cfg);
            break;
        case ExperimentKind::operator_norm:
            rep = run_opnorm(cfg);
            break;
    }
    if (!cfg.out_dir.empty()) write_report(rep, cfg, cfg.out_dir);
    return rep;
}

FullLineReport full_line_scan(const ExperimentConfig& cfg) {
    ExperimentConfig right = cfg;
    right.kind = cfg.kind == ExperimentKind::full_line_periodic ? ExperimentKind::periodic_halfline
                                                             : ExperimentKind::free_halfline;
    right.dirichlet_launch = true;
    right.out_dir.clear();
    ExperimentConfig left = right;
    left.background = reflected(cfg.background);
    left.perturbation = reflected(cfg.perturbation);

    FullLineReport fl;
    fl.right = run_lambda_experiment(right);
    fl.left = run_lambda_experiment(left);
    if (fl.right.records.size() != fl.left.records.size())
        throw NumericalError("full_line_scan: half-line reports misaligned");
    std::size_t both = 0, any = 0;
    for (std::size_t i = 0; i < fl.right.records.size(); ++i) {
        const bool r = fl.right.records[i].pass, l = fl.left.records[i].pass;
        both += (r && l) ? 1 : 0;
        any += (r || l) ? 1 : 0;
    }
    const double n = double(std::max<std::size_t>(fl.right.records.size(), 1));
    fl.both_pass_fraction = double(both) / n;
    fl.union_pass_fraction = double(any) / n;
    fl.passed = fl.both_pass_fraction >= cfg.pass_fraction_required;
    return fl;
}

namespace {

void write_records_csv(const std::vector<LambdaRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << "lambda,set,ratio,err_exponent,beta_q,beta_q1,q_converged,q1_converged,form,pass,"
           "failed,error\n";
    for (const auto& r : records)
        out << format_double(r.lambda) << ',' << r.set << ',' << format_double(r.ratio) << ','
            << format_double(r.err_exponent) << ',' << format_double(r.beta_q) << ','
            << format_double(r.beta_q1) << ',' << (r.q_converged ? 1 : 0) << ','
            << (r.q1_converged ? 1 : 0) << ',' << r.form << ',' << (r.pass ? 1 : 0) << ','
            << (r.failed ? 1 : 0) << ',' << r.error << '\n';
}

} // namespace

void write_report(const ComparisonReport& rep, const ExperimentConfig& cfg,
                  const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);

    nlohmann::ordered_json j;
    j["kind"] = kind_name(rep.kind);
    j["pass_fraction"] = rep.pass_fraction;
    j["required_fraction"] = rep.required_fraction;
    j["passed"] = rep.passed;
    j["records"] = rep.records.size();
    if (rep.maximal) {
        j["maximal"] = {{"baseline", rep.maximal->baseline},
                        {"max_ratio", rep.maximal->max_ratio},
                        {"growth_slope", rep.maximal->growth_slope},
                        {"pass", rep.maximal->pass}};
    }
    if (rep.opnorm) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < rep.opnorm->size(); ++i) {
            const auto& e = (*rep.opnorm)[i];
            arr.push_back({{"X", cfg.opnorm_X[i]},
                           {"value", e.value},
                           {"value_refined", e.value_refined},
                           {"resolution_delta", e.resolution_delta},
                           {"iterations", e.iterations}});
        }
        j["opnorm"] = arr;
    }
    if (rep.symbol) {
        j["symbol"] = {{"fit_dx", rep.symbol->fit_dx},
                       {"fit_dk", rep.symbol->fit_dk},
                       {"fit_mixed", rep.symbol->fit_mixed},
                       {"pass", rep.symbol->pass}};
    }
    j["config"] = to_json(cfg);

    std::ofstream out(dir + "/summary.json");
    if (!out) throw ConfigError("cannot open output file: " + dir + "/summary.json");
    out << j.dump(2) << '\n';

    if (!rep.records.empty()) {
        write_records_csv(rep.records, dir + "/records.csv");
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rep.records) {
            nlohmann::ordered_json rj;
            rj["lambda"] = r.lambda;
            rj["set"] = r.set;
            rj["ratio"] = r.ratio;
            rj["err_exponent"] = r.err_exponent;
            rj["beta_q"] = r.beta_q;
            rj["beta_q1"] = r.beta_q1;
            rj["q_converged"] = r.q_converged;
            rj["q1_converged"] = r.q1_converged;
            rj["form"] = r.form;
            rj["pass"] = r.pass;
            rj["failed"] = r.failed;
            if (r.failed) rj["error"] = r.error;
            arr.push_back(rj);
        }
        std::ofstream rout(dir + "/records.json");
        rout << arr.dump(2) << '\n';
    }
    if (!rep.bands.empty()) write_bands_csv(rep.bands, dir + "/bands.csv");
    if (rep.maximal) write_maximal_csv(*rep.maximal, dir + "/maximal.csv");
}

} // namespace acspec
