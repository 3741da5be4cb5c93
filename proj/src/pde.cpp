#include "nwave/pde.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "nwave/errors.hpp"
#include "nwave/front.hpp"
#include "nwave/kernels.hpp"

namespace nwave::pde {

std::string_view to_string(Scheme s) {
    return s == Scheme::MethodOfLines ? "mol" : "cn";
}

Scheme scheme_from_string(std::string_view s) {
    if (s == "mol" || s == "MethodOfLines") return Scheme::MethodOfLines;
    if (s == "cn" || s == "CrankNicolson") return Scheme::CrankNicolson;
    throw ConfigError("unknown scheme '" + std::string(s) + "' (expected mol or cn)");
}

double initial_value(const InitialCondition& ic, double x) {
    struct Eval {
        double x;
        double operator()(const HeavisideIC& h) const { return x < 0.0 ? 0.0 : h.level; }
        double operator()(const ExpTailIC& e) const {
            return x < 0.0 ? std::min(std::exp(e.beta * x), e.cap) : e.cap;
        }
        double operator()(const TanhIC& t) const {
            return 0.5 * t.level * (1.0 + std::tanh((x - t.center) / t.width));
        }
        double operator()(const UniformIC& u) const { return u.value; }
    };
    return std::visit(Eval{x}, ic);
}

std::string describe(const InitialCondition& ic) {
    struct Desc {
        std::string operator()(const HeavisideIC& h) const {
            return "heaviside(level=" + std::to_string(h.level) + ")";
        }
        std::string operator()(const ExpTailIC& e) const {
            return "exptail(beta=" + std::to_string(e.beta) + ", cap=" + std::to_string(e.cap) + ")";
        }
        std::string operator()(const TanhIC& t) const {
            return "tanh(level=" + std::to_string(t.level) + ", width=" + std::to_string(t.width) +
                   ", center=" + std::to_string(t.center) + ")";
        }
        std::string operator()(const UniformIC& u) const {
            return "uniform(" + std::to_string(u.value) + ")";
        }
    };
    return std::visit(Desc{}, ic);
}

double SimConfig::level() const { return track_level.value_or(0.5 * params.kappa()); }

std::size_t SimConfig::nodes() const {
    return static_cast<std::size_t>(std::llround((x_hi - x_lo) / dx)) + 1;
}

int SimConfig::delay_steps() const { return static_cast<int>(std::lround(params.tau() / dt)); }

long SimConfig::total_steps() const { return std::lround(t_end / dt); }

double adjust_dt(double tau, double dt) {
    if (!(tau > 0.0 && dt > 0.0)) throw ConfigError("adjust_dt: tau and dt must be positive");
    const double k = std::ceil(tau / dt - 1e-9);
    return tau / k;
}

SimConfig preset(std::string_view name) {
    const ModelParams params(365.0, 0.07);
    const double kappa = params.kappa();
    SimConfig c;
    c.params = params;
    if (name == "fig4") {
        c.name = "fig4";
        c.x_lo = -150;
        c.x_hi = 150;
        c.dx = 0.05;
        c.dt = adjust_dt(params.tau(), 0.01);
        c.t_end = 2.0;
        c.scheme = Scheme::CrankNicolson;
        c.ic = ExpTailIC{0.7, kappa};
        c.u_lo = 0.0;
        c.u_hi = kappa;
        c.snapshot_times = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
        c.note = "t_end=2 is an artifact choice; the front stays inside the domain";
        return c;
    }
    if (name == "fig3") {
        c.name = "fig3";
        c.x_lo = -500;
        c.x_hi = 500;
        c.dx = 0.25;
        c.dt = params.tau() / 14.0;
        c.t_end = 5.0;
        c.scheme = Scheme::MethodOfLines;
        c.ic = HeavisideIC{kappa};
        c.u_lo = 0.0;
        c.u_hi = kappa;
        c.snapshot_times = {0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5,
                            2.75, 3.0, 3.25, 3.5, 3.75, 4.0, 4.25, 4.5, 4.75, 5.0};
        c.note = "dx=0.25 and dt=tau/14 are artifact defaults; explicit midpoint method of lines";
        return c;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig3 or fig4)");
}

void validate(const SimConfig& c) {
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (!(c.dx > 0.0) || !(c.dt > 0.0) || !(c.t_end > 0.0)) fail("dx, dt and t_end must be positive");
    if (!(c.x_hi > c.x_lo)) fail("empty spatial domain");
    const double cells = (c.x_hi - c.x_lo) / c.dx;
    if (std::abs(cells - std::round(cells)) > 1e-9 * std::max(1.0, cells))
        fail("domain length is not a multiple of dx");
    if (c.nodes() < 3) fail("need at least 3 grid nodes");
    const double tau = c.params.tau();
    if (tau < c.dt * (1.0 - 1e-12))
        fail("history underflow: tau must be at least dt");
    const double ratio = tau / c.dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
        fail("tau/dt must be an integer (use adjust_dt)");
    const double steps = c.t_end / c.dt;
    if (std::abs(steps - std::round(steps)) > 1e-6 * steps)
        fail("t_end must be a multiple of dt");
    if (c.scheme == Scheme::MethodOfLines && c.dt > 0.9 * c.dx * c.dx / 2.0) {
        std::ostringstream os;
        os << "explicit step violates dt <= 0.9 dx^2/2: dt=" << c.dt << ", limit=" << 0.9 * c.dx * c.dx / 2.0;
        fail(os.str());
    }
    for (double t : c.snapshot_times)
        if (t < 0.0 || t > c.t_end + 1e-12) fail("snapshot time outside [0, t_end]");
}

SpacetimeRecord simulate(const SimConfig& config, Exec exec) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    const auto& params = config.params;
    const std::size_t n = config.nodes();
    const int K = config.delay_steps();
    const long steps = config.total_steps();
    const double dt = config.dt, dx = config.dx;
    const double level = config.level();

    SpacetimeRecord rec;
    rec.config = config;
    rec.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) rec.x[i] = config.x_lo + static_cast<double>(i) * dx;

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = initial_value(config.ic, rec.x[i]);
    u.front() = config.u_lo;
    u.back() = config.u_hi;

    // Birth values of the last K + 1 levels; level m lives in slot m mod (K + 1).
    const std::size_t ring = static_cast<std::size_t>(K) + 1;
    std::vector<std::vector<double>> fhist(ring, std::vector<double>(n));
    kernels::birth_map(u, fhist[0], params, exec);
    for (std::size_t s = 1; s < ring; ++s) fhist[s] = fhist[0];

    std::vector<long> snap_steps;
    for (double t : config.snapshot_times) snap_steps.push_back(std::lround(t / dt));

    auto record = [&](long step) {
        const double t = static_cast<double>(step) * dt;
        for (long s : snap_steps)
            if (s == step) {
                rec.snapshots.push_back({t, u});
                break;
            }
        try {
            rec.front.push_back({t, front::front_position(rec.x, u, level)});
        } catch (const NoCrossing&) {
        }
    };
    rec.min_u = *std::min_element(u.begin(), u.end());
    rec.max_u = *std::max_element(u.begin(), u.end());
    record(0);

    std::vector<double> next(n), k1(n), mid(n), rhs(n - 2);
    const double r = dt / (dx * dx);
    const kernels::TridiagonalFactor lu(n - 2, 1.0 + r + 0.5 * dt, -0.5 * r);

    // Step m -> m+1 uses delayed levels m-K and m-K+1. Before t = tau these
    // are history levels, all equal to the initial datum.
    for (long m = 0; m < steps; ++m) {
        const auto& fa = fhist[static_cast<std::size_t>(std::max(0L, m - K)) % ring];
        const auto& fb = fhist[static_cast<std::size_t>(std::max(0L, m - K + 1)) % ring];
        if (config.scheme == Scheme::CrankNicolson) {
            kernels::cn_rhs(u, fa, fb, r, dt, config.u_lo, config.u_hi, rhs, exec);
            lu.solve(rhs);
            next.front() = config.u_lo;
            next.back() = config.u_hi;
            std::copy(rhs.begin(), rhs.end(), next.begin() + 1);
        } else {
            kernels::mol_rhs(u, fa, fb, 1.0, 0.0, dx, k1, exec);
            kernels::axpy_interior(u, k1, 0.5 * dt, mid, exec);
            kernels::mol_rhs(mid, fa, fb, 0.5, 0.5, dx, k1, exec);
            kernels::axpy_interior(u, k1, dt, next, exec);
        }
        u.swap(next);

        double lo = u[0], hi = u[0];
        for (double v : u) {
            if (!std::isfinite(v)) {
                std::ostringstream os;
                os << "simulation produced a non-finite value at t=" << (m + 1) * dt;
                throw BlowUp(os.str());
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        rec.min_u = std::min(rec.min_u, lo);
        rec.max_u = std::max(rec.max_u, hi);

        // Level m+1 overwrites level m-K, which is no longer needed. While
        // m < K the history is read from slot 0 only.
        kernels::birth_map(u, fhist[static_cast<std::size_t>(m + 1) % ring], params, exec);
        record(m + 1);
    }
    rec.final_u = u;
    rec.final_t = static_cast<double>(steps) * dt;
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

}  // namespace nwave::pde
