#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "acspec/potential.hpp"

using namespace acspec;

TEST_CASE("spot values of the analytic kinds") {
    CHECK(eval_potential(PotentialSpec::power_oscillatory(1.0, 0.8, 1.0, 0.0), 0.0) ==
          doctest::Approx(1.0));
    CHECK(eval_potential(PotentialSpec::wigner_von_neumann(-8.0, 1.0), 0.0) ==
          doctest::Approx(0.0));
    CHECK(eval_potential(PotentialSpec::wigner_von_neumann(-8.0, 1.0), 1.0) ==
          doctest::Approx(-8.0 * std::sin(2.0) / 2.0));
    CHECK(eval_potential(PotentialSpec::exponential(2.0, 1.0), 1.0) ==
          doctest::Approx(2.0 * std::exp(-1.0)));
    CHECK(eval_potential(PotentialSpec::periodic(2.0, 2.0 * M_PI), M_PI) ==
          doctest::Approx(-2.0));
}

TEST_CASE("tabulated lookup returns stored samples at the nodes") {
    const PotentialSpec t = PotentialSpec::tabulated({0.0, 1.0, 2.0}, {5.0, -1.0, 3.0});
    CHECK(eval_potential(t, 1.0) == doctest::Approx(-1.0));
    CHECK(eval_potential(t, 0.5) == doctest::Approx(2.0)); // linear between 5 and -1
    CHECK(eval_potential(t, 9.0) == 0.0);                  // outside the table
}

TEST_CASE("decay envelope holds pointwise for every decaying kind") {
    std::vector<PotentialSpec> specs = {
        PotentialSpec::power_oscillatory(1.3, 0.8, 2.0, 0.7),
        PotentialSpec::wigner_von_neumann(-8.0, 1.0),
        PotentialSpec::exponential(2.0, 0.9, 3.0, 0.1),
        PotentialSpec::random_decaying(1.5, 0.6, 99),
    };
    for (const auto& s : specs) {
        REQUIRE(has_decay_envelope(s));
        const Potential v(s);
        for (double x = 0.0; x < 400.0; x += 0.37)
            CHECK(std::abs(v(x)) <= envelope_bound(s, x) + 1e-12);
    }
}

TEST_CASE("random potentials are deterministic in the seed") {
    const PotentialSpec a = PotentialSpec::random_decaying(1.0, 0.6, 42);
    const Potential v1(a), v2(a);
    for (double x = 0.0; x < 50.0; x += 1.7) CHECK(v1(x) == v2(x)); // bitwise
    const Potential v3(PotentialSpec::random_decaying(1.0, 0.6, 43));
    bool differs = false;
    for (double x = 1.0; x < 50.0; x += 1.7) differs = differs || v1(x) != v3(x);
    CHECK(differs);
}

TEST_CASE("JSON round trip keeps the kind discriminator") {
    std::vector<PotentialSpec> specs = {
        PotentialSpec::power_oscillatory(1.0, 0.7, 3.0, 0.2),
        PotentialSpec::periodic(2.0, 2.0 * M_PI, 0.0),
        PotentialSpec::random_decaying(0.5, 0.8, 7),
        PotentialSpec::tabulated({0.0, 1.0}, {1.0, 2.0}),
        PotentialSpec::sum_of({PotentialSpec::zero(), PotentialSpec::exponential(1.0, 1.0)}),
    };
    for (const auto& s : specs) {
        const auto j = to_json(s);
        CHECK(j.contains("kind"));
        const PotentialSpec back = potential_from_json(j);
        const Potential v1(s), v2(back);
        for (double x = 0.0; x < 20.0; x += 0.9) CHECK(v1(x) == doctest::Approx(v2(x)));
    }
    CHECK_THROWS_AS(potential_from_json(nlohmann::json{{"kind", "nonsense"}}), ConfigError);
    CHECK_THROWS_AS(potential_from_json(nlohmann::json::array()), ConfigError);
}

TEST_CASE("tabulated potentials load from two-column CSV") {
    const std::string path = "test_pot_tmp.csv";
    {
        std::ofstream out(path);
        out << "# x, V\n0.0, 1.5\n1.0, -0.5\n2.5, 0.25\n";
    }
    const PotentialSpec t = tabulated_from_csv(path);
    CHECK(eval_potential(t, 1.0) == doctest::Approx(-0.5));
    CHECK(eval_potential(t, 2.5) == doctest::Approx(0.25));
    std::remove(path.c_str());
    CHECK_THROWS_AS(tabulated_from_csv("does_not_exist.csv"), ConfigError);
}

TEST_CASE("reflection evaluates the formula at -x") {
    const PotentialSpec even = PotentialSpec::power_oscillatory(1.0, 0.8, 1.0, 0.0);
    const Potential v(even), vr(reflected(even));
    for (double x = 0.1; x < 10.0; x += 0.9) CHECK(v(x) == doctest::Approx(vr(x))); // even

    const PotentialSpec odd = PotentialSpec::wigner_von_neumann(-8.0, 1.0);
    const Potential w(odd), wr(reflected(odd));
    for (double x = 0.1; x < 10.0; x += 0.9) CHECK(w(x) == doctest::Approx(-wr(x)));
}
