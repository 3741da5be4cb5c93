#ifndef NWAVE_PDE_HPP
#define NWAVE_PDE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nwave/exec.hpp"
#include "nwave/model.hpp"

namespace nwave::pde {

using model::ModelParams;

enum class Scheme { MethodOfLines, CrankNicolson };
std::string_view to_string(Scheme s);
Scheme scheme_from_string(std::string_view s);

/// 0 for x < 0, level for x >= 0.
struct HeavisideIC {
    double level;
};
/// min(e^{beta x}, cap) for x < 0, cap for x >= 0.
struct ExpTailIC {
    double beta;
    double cap;
};
/// level (1 + tanh((x - center) / width)) / 2. Smooth; used for convergence studies.
struct TanhIC {
    double level;
    double width;
    double center = 0.0;
};
struct UniformIC {
    double value;
};
using InitialCondition = std::variant<HeavisideIC, ExpTailIC, TanhIC, UniformIC>;

/// The initial datum, held constant on [-tau, 0].
double initial_value(const InitialCondition& ic, double x);
std::string describe(const InitialCondition& ic);

struct SimConfig {
    ModelParams params{365.0, 0.07};
    double x_lo = -150, x_hi = 150;
    double dx = 0.05, dt = 0.01, t_end = 2.0;
    Scheme scheme = Scheme::CrankNicolson;
    InitialCondition ic = HeavisideIC{0.0};
    double u_lo = 0.0, u_hi = 0.0;  // Dirichlet values
    std::vector<double> snapshot_times;
    std::optional<double> track_level;  // default ln p / 2
    std::string name;
    std::string note;

    double level() const;
    std::size_t nodes() const;
    int delay_steps() const;  // tau / dt
    long total_steps() const;
};

/// Largest dt' <= dt with tau / dt' integral.
double adjust_dt(double tau, double dt);

/// Presets "fig3" and "fig4". Throws ConfigError for unknown names.
SimConfig preset(std::string_view name);

/// Throws ConfigError: tau/dt not integral, tau < dt, explicit step above
/// 0.9 dx^2/2, bad grid or times.
void validate(const SimConfig& config);

struct Snapshot {
    double t;
    std::vector<double> u;
};

struct FrontSample {
    double t, X;
};

struct SpacetimeRecord {
    SimConfig config;
    std::vector<double> x;
    std::vector<Snapshot> snapshots;
    std::vector<FrontSample> front;
    std::vector<double> final_u;
    double final_t = 0;
    double min_u = 0, max_u = 0;  // over all steps
    double wall_seconds = 0;
};

SpacetimeRecord simulate(const SimConfig& config, Exec exec = Exec::Parallel);

}  // namespace nwave::pde

#endif
