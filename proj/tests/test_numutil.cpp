#include "doctest.h"

#include <cmath>

#include "acspec/numutil.hpp"
#include "acspec/quadrature.hpp"

using namespace acspec;

TEST_CASE("linspace and geomspace hit their endpoints") {
    const auto l = linspace(0.0, 1.0, 11);
    CHECK(l.size() == 11);
    CHECK(l.front() == 0.0);
    CHECK(l.back() == 1.0);
    const auto g = geomspace(1.0, 100.0, 5);
    CHECK(g.front() == doctest::Approx(1.0));
    CHECK(g.back() == doctest::Approx(100.0));
    CHECK(g[2] == doctest::Approx(10.0));
    CHECK_THROWS_AS(geomspace(0.0, 1.0, 4), DomainError);
}

TEST_CASE("loglog_fit recovers an exact power law") {
    std::vector<double> xs, ys;
    for (double x = 2; x < 300; x *= 1.7) {
        xs.push_back(x);
        ys.push_back(3.0 * std::pow(x, -0.25));
    }
    const auto fit = loglog_fit(xs, ys);
    CHECK(fit.slope == doctest::Approx(-0.25).epsilon(1e-10));
    CHECK(fit.slope_stderr < 1e-10);
}

TEST_CASE("median") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 2.0, 3.0}) == doctest::Approx(2.5));
}

TEST_CASE("adaptive Simpson integrates a smooth oscillation") {
    std::function<double(double)> f = [](double x) { return std::cos(3.0 * x); };
    const double v = adaptive_simpson(f, 0.0, 2.0, 1e-12);
    CHECK(v == doctest::Approx(std::sin(6.0) / 3.0).epsilon(1e-10));
}

TEST_CASE("cumulative_uniform is fourth order") {
    // exact on cubics
    const double h = 0.1;
    std::vector<double> f(41);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = h * double(i);
        f[i] = x * x * x - 2.0 * x + 1.0;
    }
    const auto c = cumulative_uniform(f, h);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = h * double(i);
        const double exact = 0.25 * x * x * x * x - x * x + x;
        CHECK(c[i] == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("derive_seed decorrelates indices") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(7, 5) == derive_seed(7, 5));
}
