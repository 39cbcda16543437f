// Compares the serial reference kernels against the OpenMP paths on the two
// data-parallel workloads: the power surface grid and a scenario batch.

#include "crpower/sweep.hpp"

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace crpower;

namespace {

double seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds(t0);
}

void row(const char* name, double serial_s, double parallel_s) {
    std::printf("%-18s %10.3f ms %10.3f ms %8.2fx\n", name, serial_s * 1e3, parallel_s * 1e3,
                serial_s / parallel_s);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("%-18s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    AppConfig surface_cfg;
    apply_override(surface_cfg, "r2_step_km", "0.02");
    apply_override(surface_cfg, "theta_step_deg", "0.1");
    std::vector<SurfaceCell> cells;
    const double surf_serial = timed([&] { cells = evaluate_surface(surface_cfg, ExecMode::serial); });
    std::vector<SurfaceCell> cells_p;
    const double surf_parallel =
        timed([&] { cells_p = evaluate_surface(surface_cfg, ExecMode::parallel); });
    row("surface grid", surf_serial, surf_parallel);
    if (cells != cells_p) {
        std::printf("surface results diverged between modes\n");
        return 1;
    }

    AppConfig batch_cfg;
    apply_override(batch_cfg, "sim_time_s", "400");
    apply_override(batch_cfg, "n_seeds", "6");
    apply_override(batch_cfg, "speeds_mps", "10,40");
    apply_override(batch_cfg, "fixed_powers_w", "20,60,100");
    std::vector<PdrRun> runs;
    const double pdr_serial = timed([&] { runs = run_pdr_sweep(batch_cfg, ExecMode::serial); });
    std::vector<PdrRun> runs_p;
    const double pdr_parallel =
        timed([&] { runs_p = run_pdr_sweep(batch_cfg, ExecMode::parallel); });
    row("scenario batch", pdr_serial, pdr_parallel);
    for (size_t i = 0; i < runs.size(); ++i) {
        if (!(runs[i].metrics == runs_p[i].metrics)) {
            std::printf("scenario results diverged between modes\n");
            return 1;
        }
    }
    std::printf("cells: %zu, scenarios: %zu, results identical across modes\n", cells.size(),
                runs.size());
    return 0;
}
