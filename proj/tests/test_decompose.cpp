#include "doctest.h"

#include <cmath>

#include "acspec/decompose.hpp"
#include "acspec/quadrature.hpp"

using namespace acspec;

TEST_CASE("block recursion a_{n+1} = a_n + sqrt(a_n)") {
    const Decomposition dec = decompose_slow_potential(PotentialSpec::zero(), 1.0, 0.6, 0.1, 50.0);
    REQUIRE(dec.blocks.size() >= 3);
    CHECK(dec.blocks[0] == 1.0);
    CHECK(dec.blocks[1] == 2.0);
    CHECK(dec.blocks[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
    for (std::size_t n = 0; n + 1 < dec.blocks.size(); ++n)
        CHECK(dec.blocks[n + 1] - dec.blocks[n] ==
              doctest::Approx(std::sqrt(dec.blocks[n])).epsilon(1e-14));
}

TEST_CASE("zero potential decomposes into zeros") {
    const Decomposition dec = decompose_slow_potential(PotentialSpec::zero(), 1.0, 0.6, 0.1, 80.0);
    for (double c : dec.block_constants) CHECK(c == 0.0);
    for (double x = 0.5; x < 70.0; x += 3.3) {
        CHECK(dec.eval_v1(x) == 0.0);
        CHECK(dec.eval_v2(x) == 0.0);
    }
    const DecompositionReport rep = verify_decomposition(dec, 1, decomposition_grid(dec));
    CHECK(rep.pass);
    CHECK(rep.max_block_residual == 0.0);
}

TEST_CASE("smooth cutoff shape") {
    CHECK(smooth_cutoff(0.05, 0.1) == 0.0);
    CHECK(smooth_cutoff(-0.05, 0.1) == 0.0);
    CHECK(smooth_cutoff(0.25, 0.1) == 1.0);
    const double mid = smooth_cutoff(0.15, 0.1);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
}

TEST_CASE("block means vanish within quadrature tolerance") {
    const PotentialSpec V = PotentialSpec::power_oscillatory(1.0, 0.6, 1.0);
    const Decomposition dec = decompose_slow_potential(V, 1.0, 0.6, 0.1, 2000.0);
    std::function<double(double)> v2 = [&](double t) { return dec.eval_v2(t); };
    for (std::size_t n = 0; n < dec.block_count(); n += 3) {
        const double lo = dec.blocks[n], hi = dec.blocks[n + 1];
        const double res = std::abs(adaptive_simpson_chunked(v2, lo, hi, 1e-13 * (hi - lo)));
        CHECK(res < 1e-8 * (hi - lo));
    }
}

TEST_CASE("V1 envelopes and the V2 tail for a slowly decaying oscillation") {
    const PotentialSpec V = PotentialSpec::power_oscillatory(1.0, 0.6, 1.0);
    const Decomposition dec = decompose_slow_potential(V, 1.0, 0.6, 0.1, 2500.0);
    const DecompositionReport rep = verify_decomposition(dec, 1, decomposition_grid(dec));
    REQUIRE(rep.envelope_exponent.size() == 2);
    CHECK(rep.envelope_exponent[0] <= -0.55);
    CHECK(rep.envelope_exponent[1] <= -1.0);
    CHECK(rep.envelope_ok[0]);
    CHECK(rep.envelope_ok[1]);
    CHECK(rep.v2_tail_exponent < 0.0);
    CHECK(rep.pass);
}

TEST_CASE("V2 has uniformly bounded partial integrals and exact zeros at block ends") {
    const PotentialSpec V = PotentialSpec::power_oscillatory(1.0, 0.6, 1.0);
    const Decomposition dec = decompose_slow_potential(V, 1.0, 0.6, 0.1, 800.0);
    std::function<double(double)> v2 = [&](double t) { return dec.eval_v2(t); };

    // int_{a_n}^{a_{n+1}} V2 = 0 by construction, so the within-block tail at
    // a block boundary vanishes
    for (std::size_t n = 2; n < dec.block_count(); n += 5) {
        const double res = adaptive_simpson_chunked(
            v2, dec.blocks[n], dec.blocks[n + 1],
            1e-13 * (dec.blocks[n + 1] - dec.blocks[n]));
        CHECK(std::abs(res) < 1e-10);
    }

    // running integral stays bounded by the head plus one block's mass
    double run = 0.0;
    double bound = 0.0;
    for (std::size_t n = 0; n + 1 < dec.blocks.size(); ++n) {
        const double piece = adaptive_simpson_chunked(v2, n == 0 ? 0.0 : dec.blocks[n],
                                                      dec.blocks[n + 1], 1e-12);
        run += piece;
        bound = std::max(bound, std::abs(run));
    }
    CHECK(bound < 3.0); // head contribution only; blocks cancel
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(decompose_slow_potential(PotentialSpec::zero(), 1.0, 0.4, 0.1, 100.0),
                    DomainError);
    CHECK_THROWS_AS(decompose_slow_potential(PotentialSpec::zero(), 1.0, 0.6, 0.3, 100.0),
                    DomainError);
    const Decomposition dec =
        decompose_slow_potential(PotentialSpec::power_oscillatory(1.0, 0.6, 1.0), 1.0, 0.6,
                                 0.1, 100.0);
    CHECK_THROWS_AS(verify_decomposition(dec, 5, decomposition_grid(dec)), DomainError);
    // coarse grid refuses second differences
    CHECK_THROWS_AS(verify_decomposition(dec, 2, linspace(1.0, 90.0, 30)), DomainError);
}

TEST_CASE("decomposition is deterministic") {
    const PotentialSpec V = PotentialSpec::power_oscillatory(1.0, 0.6, 1.0);
    const Decomposition a = decompose_slow_potential(V, 1.0, 0.6, 0.1, 300.0);
    const Decomposition b = decompose_slow_potential(V, 1.0, 0.6, 0.1, 300.0);
    CHECK(a.block_constants == b.block_constants);
}
