#include "nwave/heteroclinic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nwave/characteristic.hpp"
#include "nwave/errors.hpp"
#include "nwave/numerics.hpp"

namespace nwave::heteroclinic {

namespace {

int sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

Trajectory::Trajectory(double t_start, double h, std::vector<double> u, std::vector<double> du)
    : t_start_(t_start), h_(h), u_(std::move(u)), du_(std::move(du)) {
    if (!(h > 0.0)) throw DomainError("trajectory: step must be positive");
    if (u_.size() != du_.size() || u_.size() < 2)
        throw DomainError("trajectory: need at least two samples with derivatives");
}

std::size_t Trajectory::interval(double t) const {
    const double te = t_end();
    if (!(t >= t_start_ - 1e-12 * h_ && t <= te + 1e-12 * h_))
        throw DomainError("trajectory: time outside the integrated range");
    const double s = (t - t_start_) / h_;
    const auto i = static_cast<std::size_t>(std::max(0.0, std::floor(s)));
    return std::min(i, size() - 2);
}

double Trajectory::at(double t) const {
    const std::size_t i = interval(t);
    return numerics::hermite(this->t(i), this->t(i + 1), u_[i], u_[i + 1], du_[i], du_[i + 1], t);
}

double Trajectory::derivative_at(double t) const {
    const std::size_t i = interval(t);
    return numerics::hermite_derivative(this->t(i), this->t(i + 1), u_[i], u_[i + 1], du_[i],
                                        du_[i + 1], t);
}

double default_t_end(const DirichletExpansion& expansion) {
    const auto& params = expansion.params();
    const auto rep =
        characteristic::real_roots(characteristic::CharKind::AtKappaDDE, params);
    double rate = 1.0;
    if (!rep.roots.empty()) rate = std::min(1.0, std::abs(rep.roots.back().z));
    const double span = std::max({10.0, 20.0 * params.tau(), 5.0});
    return expansion.handoff_time() + span / rate;
}

Trajectory integrate(const DirichletExpansion& expansion, double t_end, int K) {
    if (K < 20) throw DomainError("integrate: K must be >= 20");
    const auto& params = expansion.params();
    const double tau = params.tau();
    const double t0 = expansion.handoff_time();
    if (!(t_end > t0)) throw DomainError("integrate: t_end must exceed the handoff time");
    const double h = tau / K;
    const auto steps = static_cast<std::size_t>(std::ceil((t_end - t0) / h - 1e-9));
    const std::size_t Ks = static_cast<std::size_t>(K);

    std::vector<double> U(Ks + 1 + steps), D(Ks + 1 + steps);
    const double t_start = t0 - tau;
    for (std::size_t i = 0; i <= Ks; ++i) {
        const auto sp = expansion.evaluate(t_start + static_cast<double>(i) * h);
        U[i] = sp.value;
        D[i] = sp.derivative;
    }

    auto f = [&](double u) { return model::birth(u, 0, params); };
    auto rhs = [&](double u, double lag) { return -u + f(lag); };
    for (std::size_t n = Ks; n < Ks + steps; ++n) {
        const double a = U[n - Ks], b = U[n - Ks + 1];
        const double lag_mid = 0.5 * (a + b) + h * (D[n - Ks] - D[n - Ks + 1]) / 8.0;
        const double k1 = rhs(U[n], a);
        const double k2 = rhs(U[n] + 0.5 * h * k1, lag_mid);
        const double k3 = rhs(U[n] + 0.5 * h * k2, lag_mid);
        const double k4 = rhs(U[n] + h * k3, b);
        const double next = U[n] + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(next) || std::abs(next) > 1e6) {
            std::ostringstream os;
            os << "integrate: |u| exceeded 1e6 at t = " << t_start + static_cast<double>(n + 1) * h;
            throw BlowUp(os.str());
        }
        U[n + 1] = next;
        D[n + 1] = rhs(next, b);
    }

    Trajectory traj(t_start, h, std::move(U), std::move(D));
    traj.t0 = t0;
    traj.K = K;
    traj.tau = tau;
    traj.mu = expansion.mu();
    traj.eps = expansion.eps();
    traj.horizon = expansion.horizon();
    traj.series_order = expansion.order();
    return traj;
}

std::string_view to_string(TailClass tail) {
    return tail == TailClass::MonotoneTail ? "MonotoneTail" : "Oscillating";
}

std::vector<Crossing> find_crossings(const Trajectory& traj, double level) {
    const double noise = 1e-12 * (1.0 + std::abs(level));
    const auto& u = traj.u();
    auto side = [&](std::size_t i) {
        const double d = u[i] - level;
        return std::abs(d) <= noise ? 0 : sgn(d);
    };
    auto locate = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = i; k < j; ++k) {
            const double a = u[k] - level, b = u[k + 1] - level;
            if (a == 0.0) return traj.t(k);
            if (sgn(a) * sgn(b) < 0)
                return numerics::solve_bracketed([&](double t) { return traj.at(t) - level; },
                                                 {traj.t(k), traj.t(k + 1)},
                                                 1e-13 * (1.0 + std::abs(traj.t(k))));
        }
        return 0.5 * (traj.t(i) + traj.t(j));
    };

    std::vector<Crossing> out;
    std::size_t last = 0;
    int last_side = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const int s = side(i);
        if (s == 0) continue;
        if (last_side != 0 && s != last_side) {
            const double tc = locate(last, i);
            const double slope = traj.derivative_at(tc);
            const double stol = 1e-12 * (1.0 + std::abs(level));
            out.push_back({tc, std::abs(slope) <= stol ? 0 : sgn(slope)});
        }
        last = i;
        last_side = s;
    }
    return out;
}

CrossingReport crossings(const Trajectory& traj, double level) {
    CrossingReport rep;
    rep.level = level;
    rep.crossings = find_crossings(traj, level);
    const auto& u = traj.u();
    const auto& du = traj.du();
    const double tau = traj.tau;

    for (std::size_t j = 0; j < rep.crossings.size(); ++j) {
        const Crossing& c = rep.crossings[j];
        const int expected = j % 2 == 0 ? 1 : -1;
        std::ostringstream os;
        if (c.slope_sign == 0) {
            os << "crossing " << j + 1 << " at t=" << c.t << " has zero slope";
            rep.anomalies.push_back(os.str());
        } else if (c.slope_sign != expected) {
            os << "crossing " << j + 1 << " at t=" << c.t << " breaks the up/down alternation";
            rep.anomalies.push_back(os.str());
        }
        if (j > 0) {
            const double gap = c.t - rep.crossings[j - 1].t;
            rep.gaps.push_back(gap);
            if (tau > 0.0 && gap <= tau) {
                std::ostringstream g;
                g << "gap " << j << " = " << gap << " does not exceed tau";
                rep.anomalies.push_back(g.str());
            }
        }
    }

    // First local maximum of u*.
    const double dtol = 1e-12 * (1.0 + std::abs(level));
    std::optional<std::size_t> rising;
    for (std::size_t i = 0; i < du.size(); ++i) {
        if (du[i] > dtol) {
            rising = i;
        } else if (du[i] < -dtol && rising) {
            const double tm = numerics::solve_bracketed(
                [&](double t) { return traj.derivative_at(t); }, {traj.t(*rising), traj.t(i)},
                1e-13 * (1.0 + std::abs(traj.t(i))));
            rep.first_max_t = tm;
            rep.first_max_u = std::max(traj.at(tm), u[*rising]);
            break;
        }
    }

    // Global maximum, refined on the interpolant.
    const auto imax = static_cast<std::size_t>(std::max_element(u.begin(), u.end()) - u.begin());
    rep.global_max = u[imax];
    rep.global_max_t = traj.t(imax);
    if (imax > 0 && imax + 1 < u.size() && du[imax - 1] > 0.0 && du[imax + 1] < 0.0) {
        const double tm = numerics::solve_bracketed(
            [&](double t) { return traj.derivative_at(t); }, {traj.t(imax - 1), traj.t(imax + 1)},
            1e-13 * (1.0 + std::abs(traj.t(imax))));
        const double um = traj.at(tm);
        if (um > rep.global_max) {
            rep.global_max = um;
            rep.global_max_t = tm;
        }
    }

    // Tail shape. Once |u - level| reaches round-off the trajectory freezes, which
    // would look monotone, so the tail is judged up to the last sample that is
    // still clearly above the noise floor.
    const double noise = 1e-12 * (1.0 + std::abs(level));
    std::size_t i_eff = u.size() - 1;
    while (i_eff > 0 && std::abs(u[i_eff] - level) <= 1e3 * noise && traj.t(i_eff) > traj.t0) --i_eff;
    const double t_eff = traj.t(i_eff);

    const double last_gap = rep.gaps.empty() ? 0.0 : rep.gaps.back();
    const bool oscillating = rep.crossings.size() >= 2 &&
                             rep.crossings.back().t >= t_eff - std::max(4.0 * tau, 1.5 * last_gap);

    bool up = true, down = true;
    for (std::size_t i = 0; i < i_eff; ++i) {
        if (traj.t(i) < t_eff - 2.0 * tau) continue;
        const double d = u[i + 1] - u[i];
        if (d < -noise) up = false;
        if (d > noise) down = false;
    }
    const double ref = rep.crossings.empty() ? traj.t0 : rep.crossings.back().t;
    double peak = 0.0;
    for (std::size_t i = 0; i <= i_eff; ++i)
        if (traj.t(i) >= ref) peak = std::max(peak, std::abs(u[i] - level));
    const double final_dev = std::abs(u[i_eff] - level);
    const bool decayed = final_dev * 1e3 <= peak;

    if (oscillating) {
        rep.tail = TailClass::Oscillating;
    } else if ((up || down) && decayed) {
        rep.tail = TailClass::MonotoneTail;
    } else {
        std::ostringstream os;
        os << "tail inconclusive at t=" << t_eff << ": monotone=" << (up || down)
           << ", |u-level| decay ratio=" << (final_dev > 0 ? peak / final_dev : INFINITY)
           << ", crossings=" << rep.crossings.size();
        throw InconclusiveTail(os.str());
    }
    return rep;
}

CrossingReport crossings(const Trajectory& traj, const ModelParams& params) {
    return crossings(traj, params.kappa());
}

int sign_change_count(std::span<const double> window) {
    int count = 0, last = 0;
    for (double v : window) {
        const int s = sgn(v);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

std::vector<double> history_window(const Trajectory& traj, double t, double kappa) {
    const int K = traj.K > 0 ? traj.K : static_cast<int>(std::lround(traj.tau / traj.h()));
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(K) + 2);
    for (int i = 0; i <= K; ++i) {
        const double s = -traj.tau + static_cast<double>(i) * traj.h();
        w.push_back(traj.at(t + s) - kappa);
    }
    w.push_back(traj.derivative_at(t));
    return w;
}

Theorem1Report theorem1_verdict(const ModelParams& params) {
    if (!(params.tau() > 0.0)) throw DomainError("theorem1_verdict: tau must be positive");
    const double tau = params.tau(), p = params.p();
    Theorem1Report r;
    r.J_upper = std::exp(1.0 + std::exp(-1.0 - tau) / tau);
    r.in_J = p > std::exp(2.0) && p < r.J_upper;
    r.lemma_bound = params.P() * tau * std::exp(1.0 + tau) < 1.0;
    r.zeta = dirichlet::zeta(params);
    r.zeta_gt_lnp = r.zeta > params.kappa();
    r.verdict = r.in_J && r.zeta_gt_lnp;
    return r;
}

Theorem1Report theorem1_verdict_with_run(const ModelParams& params) {
    Theorem1Report r = theorem1_verdict(params);
    const auto exp = DirichletExpansion::build(params);
    const auto traj = integrate(exp, default_t_end(exp));
    try {
        const auto rep = crossings(traj, params);
        r.max_u = rep.global_max;
        r.tail = rep.tail;
    } catch (const InconclusiveTail&) {
        r.max_u = *std::max_element(traj.u().begin(), traj.u().end());
    }
    return r;
}

}  // namespace nwave::heteroclinic
