// Compares the OpenMP-parallel net kernels against their serial reference
// implementations: same results required, speedup reported.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "skforge/net.hpp"

using namespace skforge;

namespace {

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    unsigned max_len = argc > 1 ? static_cast<unsigned>(std::atoi(argv[1])) : 18;
    std::size_t probes = argc > 2 ? static_cast<std::size_t>(std::atoll(argv[2]))
                                  : 20000;

    std::printf("threads: %d\n", omp_get_max_threads());
    GateSet gs = GateSet::load(SKFORGE_DATA_DIR "/gates_ht.json");
    NetParams np;
    np.max_len = max_len;
    double t0 = now_ms();
    Net net = build_net(gs, np);
    std::printf("net: L0=%u entries=%zu build=%.1f ms\n", max_len,
                net.entries().size(), now_ms() - t0);

    // Kernel 1: covering-radius estimation over quasi-random probes.
    t0 = now_ms();
    double cov_serial = net.covering_estimate_serial(probes);
    double t_serial = now_ms() - t0;
    t0 = now_ms();
    double cov_parallel = net.covering_estimate_parallel(probes);
    double t_parallel = now_ms() - t0;
    if (cov_serial != cov_parallel) {
        std::printf("FAIL covering mismatch: serial %.17g parallel %.17g\n",
                    cov_serial, cov_parallel);
        return 1;
    }
    std::printf(
        "covering (%zu probes): %.6f | serial %.1f ms, parallel %.1f ms, "
        "speedup %.2fx\n",
        probes, cov_serial, t_serial, t_parallel,
        t_parallel > 0 ? t_serial / t_parallel : 0.0);

    // Kernel 2: grid-accelerated nearest query vs the linear-scan oracle.
    std::size_t n_queries = 2000;
    t0 = now_ms();
    double acc_grid = 0;
    for (std::size_t i = 0; i < n_queries; ++i)
        acc_grid += net.nearest(probe_point(i)).distance;
    double t_grid = now_ms() - t0;
    t0 = now_ms();
    double acc_linear = 0;
    for (std::size_t i = 0; i < n_queries; ++i)
        acc_linear += net.nearest_linear(probe_point(i)).distance;
    double t_linear = now_ms() - t0;
    if (acc_grid != acc_linear) {
        std::printf("FAIL nearest mismatch: grid %.17g linear %.17g\n",
                    acc_grid, acc_linear);
        return 1;
    }
    std::printf(
        "nearest (%zu queries): grid %.1f ms, linear %.1f ms, speedup "
        "%.2fx\n",
        n_queries, t_grid, t_linear, t_grid > 0 ? t_linear / t_grid : 0.0);
    std::printf("PASS kernels agree\n");
    return 0;
}
