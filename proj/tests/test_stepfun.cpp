#include "doctest.h"

#include <cmath>

#include "acspec/stepfun.hpp"

using namespace acspec;

TEST_CASE("rearrangement sorts levels and preserves measure") {
    StepFunction f;
    f.breakpoints = {0.0, 1.0, 2.0, 3.0};
    f.values = {3.0, 1.0, 2.0};
    const StepFunction g = rearrangement(f);
    REQUIRE(g.values.size() == 3);
    CHECK(g.values[0] == 3.0);
    CHECK(g.values[1] == 2.0);
    CHECK(g.values[2] == 1.0);
    CHECK(g.breakpoints.front() == 0.0);
    CHECK(g.breakpoints.back() == 3.0);

    const StepFunction ind = make_indicator(2.0, 4.5);
    const StepFunction inds = rearrangement(ind);
    CHECK(inds.breakpoints.front() == 0.0);
    CHECK(inds.breakpoints.back() == doctest::Approx(2.5));
    CHECK(inds.values[0] == 1.0);
}

TEST_CASE("rearrangement is equimeasurable with |f|") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const StepFunction f = random_step_function(seed, 12, 8.0);
        const StepFunction g = rearrangement(f);
        for (double s : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9})
            CHECK(f.measure_above(s) == doctest::Approx(g.measure_above(s)).epsilon(1e-12));
        for (double pnorm : {1.0, 2.0, 4.0})
            CHECK(lp_norm(f, pnorm) == doctest::Approx(lp_norm(g, pnorm)).epsilon(1e-10));
    }
}

TEST_CASE("Lorentz norm identities") {
    // ||chi_E||*_{pq} = m(E)^{1/p}
    for (double p : {1.0, 4.0 / 3.0, 2.0, 3.0})
        for (double q : {1.0, 2.0, 4.0}) {
            const StepFunction ind = make_indicator(1.0, 3.75);
            CHECK(lorentz_norm(ind, p, q).value ==
                  doctest::Approx(std::pow(2.75, 1.0 / p)).epsilon(1e-10));
        }
    // ||f||_{pp} = ||f||_p
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        const StepFunction f = random_step_function(seed, 10, 4.0);
        for (double p : {1.0, 2.0, 3.0})
            CHECK(lorentz_norm(f, p, p).value == doctest::Approx(lp_norm(f, p)).epsilon(1e-10));
    }
}

TEST_CASE("starred norm is non-increasing in q") {
    for (std::uint64_t seed : {21ULL, 22ULL, 23ULL, 24ULL}) {
        const StepFunction f = random_step_function(seed, 14, 6.0);
        for (double p : {4.0 / 3.0, 2.0}) {
            double prev = lorentz_norm(f, p, 1.0).value;
            for (double q : {1.5, 2.0, 3.0, 6.0, 12.0}) {
                const double cur = lorentz_norm(f, p, q).value;
                CHECK(cur <= prev * (1.0 + 1e-12));
                prev = cur;
            }
            const double sup_form =
                lorentz_norm(f, p, std::numeric_limits<double>::infinity()).value;
            CHECK(sup_form <= prev * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("dilation scales the Lorentz norm by c^{1/p}") {
    const StepFunction f = random_step_function(31, 10, 4.0);
    const StepFunction g = f.dilated(2.0);
    for (double p : {4.0 / 3.0, 2.0})
        for (double q : {2.0, 4.0})
            CHECK(lorentz_norm(g, p, q).value ==
                  doctest::Approx(std::pow(2.0, 1.0 / p) * lorentz_norm(f, p, q).value)
                      .epsilon(1e-10));
}

TEST_CASE("step function JSON round trip and validation") {
    const StepFunction f = random_step_function(41, 8, 4.0);
    const StepFunction g = step_function_from_json(to_json(f));
    CHECK(g.breakpoints == f.breakpoints);
    CHECK(g.values == f.values);

    StepFunction bad;
    bad.breakpoints = {0.0, 0.0};
    bad.values = {1.0};
    CHECK_THROWS_AS(bad.validate(), DomainError);
    CHECK_THROWS_AS(lorentz_norm(f, 0.5, 2.0), DomainError);
}

TEST_CASE("random step functions are deterministic and tick-quantized") {
    const StepFunction a = random_step_function(77, 16, 8.0);
    const StepFunction b = random_step_function(77, 16, 8.0);
    CHECK(a.breakpoints == b.breakpoints);
    CHECK(a.values == b.values);
    const double tick = std::exp2(-16);
    for (double bp : a.breakpoints) {
        const double t = bp / tick;
        CHECK(t == std::floor(t)); // exactly on the tick lattice
    }
}
