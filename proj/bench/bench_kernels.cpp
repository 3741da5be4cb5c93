// Serial reference vs OpenMP timings for the PDE kernels, the region atlas and a
// full fig4 run. Also checks that both paths produce identical numbers.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nwave/atlas.hpp"
#include "nwave/exec.hpp"
#include "nwave/kernels.hpp"
#include "nwave/pde.hpp"

using namespace nwave;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
    double best = INFINITY;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const std::string& name, double serial, double parallel, bool identical) {
    std::printf("%-22s serial %10.3f ms  parallel %10.3f ms  speedup %5.2fx  %s\n", name.c_str(),
                1e3 * serial, 1e3 * parallel, serial / parallel, identical ? "identical" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs OpenMP benchmark"};
    std::size_t n = 2'000'001;
    int reps = 5, threads = 0;
    bool skip_sim = false;
    app.add_option("--n", n, "grid nodes for kernel timings");
    app.add_option("--reps", reps, "repetitions, best time reported");
    app.add_option("--threads", threads, "OpenMP threads");
    app.add_flag("--skip-sim", skip_sim, "skip the full fig4 run");
    CLI11_PARSE(app, argc, argv);
    set_threads(threads);
    std::printf("threads: %d, nodes: %zu\n", max_threads(), n);

    const model::ModelParams params(365.0, 0.07);
    const double dx = 300.0 / double(n - 1), dt = 1e-3;
    std::vector<double> u(n), fa(n), fb(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -150.0 + dx * double(i);
        u[i] = params.kappa() * 0.5 * (1.0 + std::tanh(x));
    }
    kernels::birth_map(u, fa, params, Exec::Serial);
    kernels::birth_map(u, fb, params, Exec::Serial);

    std::vector<double> s(n), p(n);
    auto cmp = [&] { return kernels::max_abs_diff(s, p) == 0.0; };

    {
        const double ts = best_of(reps, [&] { kernels::birth_map(u, s, params, Exec::Serial); });
        const double tp = best_of(reps, [&] { kernels::birth_map(u, p, params, Exec::Parallel); });
        report("birth_map", ts, tp, cmp());
    }
    {
        const double ts = best_of(reps, [&] { kernels::mol_rhs(u, fa, fb, 0.5, 0.5, dx, s, Exec::Serial); });
        const double tp = best_of(reps, [&] { kernels::mol_rhs(u, fa, fb, 0.5, 0.5, dx, p, Exec::Parallel); });
        report("mol_rhs", ts, tp, cmp());
    }
    {
        const double r = dt / (dx * dx);
        std::vector<double> rs(n - 2), rp(n - 2);
        const double ts = best_of(reps, [&] {
            kernels::cn_rhs(u, fa, fb, r, dt, 0.0, params.kappa(), rs, Exec::Serial);
        });
        const double tp = best_of(reps, [&] {
            kernels::cn_rhs(u, fa, fb, r, dt, 0.0, params.kappa(), rp, Exec::Parallel);
        });
        report("cn_rhs", ts, tp, kernels::max_abs_diff(rs, rp) == 0.0);
        const kernels::TridiagonalFactor lu(n - 2, 1.0 + r + dt / 2, -r / 2);
        const double tt = best_of(reps, [&] {
            std::vector<double> d = rs;
            lu.solve(d);
        });
        std::printf("%-22s serial %10.3f ms  (sequential sweep)\n", "thomas_solve", 1e3 * tt);
    }
    {
        std::vector<atlas::RegionRow> a, b;
        const double ts = best_of(1, [&] { a = atlas::figure2_grid(0.01, 0.3, 8.0, 1e4, 200, 200, Exec::Serial); });
        const double tp = best_of(1, [&] { b = atlas::figure2_grid(0.01, 0.3, 8.0, 1e4, 200, 200, Exec::Parallel); });
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].zeta == b[i].zeta && a[i].flag == b[i].flag;
        report("atlas 200x200", ts, tp, same);
    }
    if (!skip_sim) {
        const auto cfg = pde::preset("fig4");
        pde::SpacetimeRecord a, b;
        const double ts = best_of(1, [&] { a = pde::simulate(cfg, Exec::Serial); });
        const double tp = best_of(1, [&] { b = pde::simulate(cfg, Exec::Parallel); });
        report("simulate fig4", ts, tp, kernels::max_abs_diff(a.final_u, b.final_u) == 0.0);
    }
    return 0;
}
