// Benchmark of the OpenMP kernels against their serial reference paths:
// energy scans, ensemble maximal-function runs, and the operator-norm power
// iteration. Prints a timing table and cross-checks that both paths agree.

#include <chrono>
#include <cstdio>

#include "acspec/harness.hpp"

using namespace acspec;

namespace {

double seconds(const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
    std::printf("threads available: %d\n\n", par::max_threads());
    std::printf("%-28s %10s %10s %8s %8s\n", "kernel", "serial(s)", "openmp(s)", "speedup",
                "match");

    {
        const Potential W(PotentialSpec::power_oscillatory(1.0, 0.8, 1.0));
        const EnergyGrid grid = make_energy_grid(0.5, 4.0, 24, "S");
        IntegratorConfig cfg;
        cfg.rtol = 1e-9;
        cfg.atol = 1e-11;
        BoundednessScan a, b;
        const double ts = seconds([&] { a = boundedness_scan(W, grid, 400.0, cfg, par::Mode::serial); });
        const double tp = seconds([&] { b = boundedness_scan(W, grid, 400.0, cfg, par::Mode::openmp); });
        bool match = true;
        for (std::size_t i = 0; i < a.records.size(); ++i)
            match = match && a.records[i].growth == b.records[i].growth;
        std::printf("%-28s %10.3f %10.3f %8.2f %8s\n", "boundedness_scan", ts, tp, ts / tp,
                    match ? "yes" : "NO");
    }

    {
        const KernelEvaluator kernel(KernelSpec::fourier(1.0, 5.0), 1.0);
        MaximalExperimentReport a, b;
        const double ts = seconds([&] {
            a = maximal_bound_experiment(kernel, 4.0 / 3.0, 4.0, 40, {0, 2, 4}, 7, 120,
                                         par::Mode::serial);
        });
        const double tp = seconds([&] {
            b = maximal_bound_experiment(kernel, 4.0 / 3.0, 4.0, 40, {0, 2, 4}, 7, 120,
                                         par::Mode::openmp);
        });
        bool match = a.max_ratio == b.max_ratio && a.baseline == b.baseline;
        std::printf("%-28s %10.3f %10.3f %8.2f %8s\n", "maximal_bound_experiment", ts, tp,
                    ts / tp, match ? "yes" : "NO");
    }

    {
        KernelEvaluator k1(
            KernelSpec::free_phase(PotentialSpec::power_oscillatory(1.0, 0.55, 1.0), 1.0, 2.0),
            260.0);
        L2NormEstimate a, b;
        const double ts = seconds(
            [&] { a = estimate_l2_norm(k1, 250.0, 8.0, 100, par::Mode::serial, false); });
        const double tp = seconds(
            [&] { b = estimate_l2_norm(k1, 250.0, 8.0, 100, par::Mode::openmp, false); });
        bool match = a.value == b.value;
        std::printf("%-28s %10.3f %10.3f %8.2f %8s\n", "estimate_l2_norm", ts, tp, ts / tp,
                    match ? "yes" : "NO");
    }

    return 0;
}
