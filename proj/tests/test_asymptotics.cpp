#include "doctest.h"

#include <cmath>

#include "acspec/asymptotics.hpp"
#include "oracles.hpp"

using namespace acspec;

namespace {
PipelineConfig small_pipeline() {
    PipelineConfig p;
    p.x_max = 2000.0;
    p.fit_lo = 50.0;
    p.fit_hi = 600.0;
    return p;
}
IntegratorConfig tight() {
    IntegratorConfig c;
    c.rtol = 1e-10;
    c.atol = 1e-12;
    return c;
}
} // namespace

TEST_CASE("zero perturbation collapses the whole pipeline") {
    const FreeBasis basis(1.0);
    const PipelineConfig p = small_pipeline();
    const CoefficientGrid c = compute_coefficients(Potential(PotentialSpec::zero()), basis, p);
    for (std::size_t i = 0; i < c.size(); i += 997) {
        CHECK(std::abs(c.offdiag[i]) == 0.0);
        CHECK(c.v_theta2[i] == 0.0);
    }
    const TailIntegral q = q_tail(c, TailMethod::parts, p);
    for (const auto& v : q.value) CHECK(std::abs(v) < 1e-14);
    CHECK(q.converged);

    const SecondStage s2 = compute_second_stage(c, TailMethod::parts, p);
    for (const auto& v : s2.q1.value) CHECK(std::abs(v) < 1e-14);
    CHECK(std::abs(s2.phase.back()) < 1e-14);

    const std::vector<double> grid = linspace(0.0, 100.0, 11);
    const Prediction pred = predict(Prediction::Form::stage1, basis, c, &s2, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const State2 th = basis.eval(grid[i]);
        CHECK(std::abs(pred.phi[i] - th.u) < 1e-12);
        CHECK(std::abs(pred.dphi[i] - th.du) < 1e-12);
    }
}

TEST_CASE("free basis coefficient magnitudes") {
    const double lam = 2.0;
    const FreeBasis basis(lam);
    const Potential V(PotentialSpec::power_oscillatory(1.0, 0.8, 1.0));
    const CoefficientGrid c = compute_coefficients(V, basis, small_pipeline());
    for (std::size_t i = 1; i < c.size(); i += 4321) {
        const double x = c.x_at(i);
        CHECK(std::abs(c.offdiag[i]) ==
              doctest::Approx(std::abs(V(x)) / (2.0 * std::sqrt(lam))).epsilon(1e-10));
        CHECK(std::abs(c.diag(i).real()) < 1e-15); // purely imaginary diagonal
    }
}

TEST_CASE("periodic coefficients respect the sup bound") {
    const Potential U(PotentialSpec::periodic(2.0, 2.0 * M_PI));
    const auto bands = find_bands(U, -2.0, 10.0, 1e-7, tight(), 600);
    const double lam = 0.5 * (bands[0].lo + bands[0].hi);
    const BlochBasis basis(bloch_function(U, lam, tight(), 512));
    const Potential V(PotentialSpec::power_oscillatory(1.0, 0.7, 3.0));
    PipelineConfig p = small_pipeline();
    p.x_max = 500.0;
    const CoefficientGrid c = compute_coefficients(V, basis, p);
    const double bound = basis.sup_theta() * basis.sup_theta() / std::abs(basis.wron());
    for (std::size_t i = 0; i < c.size(); i += 173)
        CHECK(std::abs(c.offdiag[i]) <= std::abs(V(c.x_at(i))) * bound * (1.0 + 1e-5));
}

TEST_CASE("q for an exponential potential matches the closed form") {
    const double lam = 1.3;
    const FreeBasis basis(lam);
    const Potential V(PotentialSpec::exponential(1.0, 1.0));
    PipelineConfig p;
    p.x_max = 120.0;
    p.dx = 0.02;
    p.fit_lo = 2.0;
    p.fit_hi = 20.0;
    const CoefficientGrid c = compute_coefficients(V, basis, p);
    const double rt = std::sqrt(lam);
    const cplx w(0.0, -2.0 * rt);
    for (TailMethod method : {TailMethod::parts, TailMethod::direct}) {
        const TailIntegral q = q_tail(c, method, p);
        for (std::size_t i = 0; i < q.x.size(); ++i) {
            if (q.x[i] > 40.0) break; // below the noise floor of e^{-x}
            const cplx mu(1.0, 2.0 * rt);
            const cplx exact = -std::exp(-mu * q.x[i]) / mu / w;
            CHECK(std::abs(q.value[i] - exact) < 1e-8);
        }
        CHECK(q.converged);
    }
}

TEST_CASE("q probes agree with the independent tail-quadrature oracle") {
    const double lam = 1.0;
    const FreeBasis basis(lam);
    const Potential V(PotentialSpec::power_oscillatory(1.0, 0.8, 1.0));
    PipelineConfig p;
    p.x_max = 8000.0;
    p.fit_lo = 50.0;
    p.fit_hi = 2000.0;
    const CoefficientGrid c = compute_coefficients(V, basis, p);
    const TailIntegral q = q_tail(c, TailMethod::parts, p);
    for (double probe : {10.0, 30.0, 100.0, 300.0, 900.0}) {
        std::size_t best = 0;
        for (std::size_t i = 0; i < q.x.size(); ++i)
            if (std::abs(q.x[i] - probe) < std::abs(q.x[best] - probe)) best = i;
        const cplx expect = oracles::oracle_q_free(1.0, 0.8, 1.0, lam, q.x[best]);
        CHECK(std::abs(q.value[best] - expect) < 2e-3 * std::max(1.0, std::abs(expect)));
        CHECK(std::abs(q.value[best] - expect) < 0.02 * std::abs(expect) + 1e-6);
    }
    CHECK(q.converged);
    CHECK(q.beta < -0.20); // oscillatory integration by parts gives ~ x^{-0.8}
}

TEST_CASE("decay exponent fit on exact power laws") {
    TailIntegral t;
    t.x = geomspace(10.0, 1000.0, 24);
    for (double x : t.x) t.value.push_back(cplx(std::pow(x, -0.25), 0.0));
    const DecayFit f = fit_decay_exponent(t, 10.0, 1000.0);
    CHECK(f.beta == doctest::Approx(-0.25).epsilon(1e-8));

    TailIntegral c;
    c.x = t.x;
    c.value.assign(t.x.size(), cplx(0.7, 0.0));
    CHECK(fit_decay_exponent(c, 10.0, 1000.0).beta == doctest::Approx(0.0).epsilon(1e-12));

    TailIntegral z = c;
    z.value[5] = 0.0;
    CHECK_THROWS_AS(fit_decay_exponent(z, 10.0, 1000.0), DomainError);
    CHECK_THROWS_AS(fit_decay_exponent(c, 900.0, 1000.0), DomainError); // too few points
}

TEST_CASE("second stage: unimodular factor and q1 decay") {
    const double lam = 1.0;
    const FreeBasis basis(lam);
    const Potential V(PotentialSpec::power_oscillatory(1.0, 0.7, 1.0));
    PipelineConfig p;
    p.x_max = 8000.0;
    p.fit_lo = 50.0;
    p.fit_hi = 2000.0;
    const CoefficientGrid c = compute_coefficients(V, basis, p);
    const SecondStage s2 = compute_second_stage(c, TailMethod::direct, p);
    for (std::size_t i = 0; i < c.size(); i += 16384)
        CHECK(std::abs(s2.offdiag1[i]) ==
              doctest::Approx(std::abs(c.offdiag[i])).epsilon(1e-10));
    CHECK(s2.q1.beta < -0.12);
    CHECK(s2.q1.converged);
}

TEST_CASE("predictions are unimodular deformations of the basis") {
    const FreeBasis basis(1.0);
    const Potential V(PotentialSpec::power_oscillatory(1.0, 0.8, 1.0));
    PipelineConfig p = small_pipeline();
    const CoefficientGrid c = compute_coefficients(V, basis, p);
    const SecondStage s2 = compute_second_stage(c, TailMethod::parts, p);
    const std::vector<double> grid = geomspace(1.0, 1000.0, 17);
    for (auto form : {Prediction::Form::stage1, Prediction::Form::stage2}) {
        const Prediction pred = predict(form, basis, c, &s2, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const State2 th = basis.eval(grid[i]);
            CHECK(std::abs(pred.phi[i]) == doctest::Approx(std::abs(th.u)).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(predict(Prediction::Form::stage2, basis, c, nullptr, grid), DomainError);
}

TEST_CASE("residual integrability reports") {
    const FreeBasis basis(1.0);
    PipelineConfig p;
    p.x_max = 400.0;
    p.fit_lo = 5.0;
    p.fit_hi = 100.0;

    const CoefficientGrid zero =
        compute_coefficients(Potential(PotentialSpec::zero()), basis, p);
    const ResidualReport r0 = residual_integrability(Potential(PotentialSpec::zero()), zero,
                                                     nullptr, 1, p);
    CHECK(r0.plateaued);
    CHECK(r0.cumulative.back() == 0.0);

    const Potential V(PotentialSpec::exponential(1.0, 1.0));
    const CoefficientGrid c = compute_coefficients(V, basis, p);
    const ResidualReport r1 = residual_integrability(V, c, nullptr, 1, p);
    CHECK(r1.plateaued);
    // plateau reached before x = 50
    double at50 = 0;
    for (std::size_t i = 0; i < r1.x.size(); ++i)
        if (r1.x[i] <= 50.0) at50 = r1.cumulative[i];
    CHECK(at50 > 0.999 * r1.cumulative.back());

    const SecondStage s2 = compute_second_stage(c, TailMethod::parts, p);
    const ResidualReport r2 = residual_integrability(V, c, &s2, 2, p);
    CHECK(r2.plateaued);
    CHECK_THROWS_AS(residual_integrability(V, c, nullptr, 2, p), DomainError);
}

TEST_CASE("band-edge Wronskian refusal") {
    class DegenerateBasis final : public SolutionBasis {
    public:
        State2 eval(double) const override { return State2{1.0, 0.0}; }
        cplx wron() const override { return cplx(0.0, 0.0); }
        double energy() const override { return 1.0; }
        double sup_theta() const override { return 1.0; }
        double max_frequency() const override { return 1.0; }
    };
    const DegenerateBasis basis;
    CHECK_THROWS_AS(
        compute_coefficients(Potential(PotentialSpec::zero()), basis, small_pipeline()),
        DomainError);
}
