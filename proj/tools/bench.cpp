// Benchmark comparing the OpenMP kernels against their serial reference
// implementations. Each kernel pair must produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "eclab/collapse.hpp"
#include "eclab/confgraph.hpp"
#include "eclab/cpru.hpp"
#include "eclab/fixtures.hpp"
#include "eclab/hamiltonian.hpp"
#include "eclab/spectral.hpp"

using namespace eclab;

namespace {

using Clock = std::chrono::high_resolution_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s %10.1f ms %10.1f ms   x%.2f   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, equal ? "results equal" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel columns run serially\n");
#endif
    std::printf("%-28s %13s %13s\n", "kernel", "serial", "parallel");

    {
        TuringMachine d = duplicate(fixtures::qbf1(5));
        auto t0 = Clock::now();
        auto serial = successor_map_serial(d);
        double ts = ms_since(t0);
        GraphOptions opts;
        opts.parallel = true;
        t0 = Clock::now();
        ConfigGraph g = build_graph(d, opts);
        double tp = ms_since(t0);
        row("graph enumeration", ts, tp, g.succ == serial);
    }

    {
        SpectralBlock b = solve_hopping(256, -1.0, -0.5);
        auto t0 = Clock::now();
        auto ser = monte_carlo_collapse_serial(b, 20000, 7);
        double ts = ms_since(t0);
        t0 = Clock::now();
        auto par = monte_carlo_collapse(b, 20000, 7, true);
        double tp = ms_since(t0);
        bool equal = true;
        for (int t = 0; t < b.length; ++t)
            equal = equal && std::abs(ser.mean[t] - par.mean[t]) < 1e-12;
        row("collapse Monte-Carlo", ts, tp, equal);
    }

    {
        TuringMachine d = duplicate(fixtures::parity(5));
        ConfigGraph g = build_graph(d);
        SparseHamiltonian hc = computation_hamiltonian(compile(d), d);
        auto t0 = Clock::now();
        auto ser = all_blocks(g, hc, false);
        double ts = ms_since(t0);
        t0 = Clock::now();
        auto par = all_blocks(g, hc, true);
        double tp = ms_since(t0);
        bool equal = ser.size() == par.size();
        for (std::size_t i = 0; equal && i < ser.size(); ++i)
            equal = ser[i].momenta == par[i].momenta;
        row("component spectra", ts, tp, equal);
    }

    {
        Dyadic R, delta;
        gap_scaling(8, 1.0, 8, R, delta);
        auto spec = zz_chain_spec(8, R, delta);
        auto t0 = Clock::now();
        auto ser = gap_statistics(spec, 300, 1e-3, 9, false);
        double ts = ms_since(t0);
        t0 = Clock::now();
        auto par = gap_statistics(spec, 300, 1e-3, 9, true);
        double tp = ms_since(t0);
        row("gap statistics", ts, tp, ser.min_gaps == par.min_gaps);
    }

    return 0;
}
