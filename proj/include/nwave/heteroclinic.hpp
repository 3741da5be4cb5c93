#ifndef NWAVE_HETEROCLINIC_HPP
#define NWAVE_HETEROCLINIC_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nwave/dirichlet.hpp"

namespace nwave::heteroclinic {

using dirichlet::DirichletExpansion;
using model::ModelParams;

/// Samples (t, u, u') on a uniform grid t_i = t_start + i h, h = tau / K.
/// The first K + 1 samples are the history on [t0 - tau, t0] taken from the series.
class Trajectory {
public:
    Trajectory(double t_start, double h, std::vector<double> u, std::vector<double> du);

    double t_start() const { return t_start_; }
    double h() const { return h_; }
    std::size_t size() const { return u_.size(); }
    double t(std::size_t i) const { return t_start_ + static_cast<double>(i) * h_; }
    double t_end() const { return t(size() - 1); }
    const std::vector<double>& u() const { return u_; }
    const std::vector<double>& du() const { return du_; }

    /// Cubic Hermite dense output. DomainError outside [t_start, t_end].
    double at(double t) const;
    double derivative_at(double t) const;

    // Filled by integrate().
    double t0 = 0;        // handoff time
    int K = 0;            // steps per delay
    double tau = 0;
    double mu = 0, eps = 0, horizon = 0;
    int series_order = 0;

private:
    std::size_t interval(double t) const;

    double t_start_, h_;
    std::vector<double> u_, du_;
};

/// Default end time: t0 + max(10, 20 tau, 5) / min(1, |z|), z the rightmost
/// real root of z + 1 + P e^{-z tau} (1 if it has none).
double default_t_end(const DirichletExpansion& expansion);

/// Classical RK4 for u' = -u + f(u(t - tau)) with h = tau / K. Delayed values at
/// half steps come from Hermite interpolation of the stored grid.
/// Throws BlowUp if |u| exceeds 1e6, DomainError if K < 20 or t_end <= t0.
Trajectory integrate(const DirichletExpansion& expansion, double t_end, int K = 64);

struct Crossing {
    double t;
    int slope_sign;  // +1 upward, -1 downward, 0 tangent
};

enum class TailClass { MonotoneTail, Oscillating };
std::string_view to_string(TailClass tail);

struct CrossingReport {
    double level = 0;
    std::vector<Crossing> crossings;
    std::vector<double> gaps;
    std::vector<std::string> anomalies;  // gaps <= tau, zero slopes, broken alternation
    std::optional<double> first_max_t;   // empty when u* increases throughout
    std::optional<double> first_max_u;
    double global_max = 0;
    double global_max_t = 0;
    TailClass tail = TailClass::MonotoneTail;
};

/// Level crossings located on the Hermite interpolant. Values within
/// 1e-12 (1 + |level|) of the level are treated as sitting on it.
std::vector<Crossing> find_crossings(const Trajectory& traj, double level);

/// Full report. Throws InconclusiveTail if neither a monotone decaying tail nor
/// late oscillation is established.
CrossingReport crossings(const Trajectory& traj, double level);
CrossingReport crossings(const Trajectory& traj, const ModelParams& params);

/// Number of strict sign alternations among the nonzero entries.
int sign_change_count(std::span<const double> window);

/// u(t + s) - kappa on the grid points of [-tau, 0], followed by u'(t).
std::vector<double> history_window(const Trajectory& traj, double t, double kappa);

struct Theorem1Report {
    bool in_J = false;        // e^2 < p < J_upper
    double J_upper = 0;       // exp(1 + e^{-1-tau}/tau)
    bool lemma_bound = false; // P tau e^{1+tau} < 1
    double zeta = 0;
    bool zeta_gt_lnp = false;
    bool verdict = false;
    // Empirical confirmation from an integrated run.
    std::optional<double> max_u;
    std::optional<TailClass> tail;
};

Theorem1Report theorem1_verdict(const ModelParams& params);
/// Same, plus the maximum and tail class of a default run.
Theorem1Report theorem1_verdict_with_run(const ModelParams& params);

}  // namespace nwave::heteroclinic

#endif
