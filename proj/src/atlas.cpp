#include "nwave/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>

#include "nwave/characteristic.hpp"
#include "nwave/dirichlet.hpp"
#include "nwave/errors.hpp"
#include "nwave/numerics.hpp"

namespace nwave::atlas {

namespace {

constexpr double e = std::numbers::e;

// e^x - 1 - x
double expm1_minus_x(double x) {
    if (std::abs(x) < 0.1) {
        double term = x * x / 2.0, sum = term;
        for (int n = 3; n < 30; ++n) {
            term *= x / n;
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    return std::expm1(x) - x;
}

// Runs body(i) for i in [0, n), rethrowing the first failure after the loop.
template <class Body>
void sweep(std::size_t n, Exec exec, Body body) {
    std::exception_ptr failure;
    const long nn = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel)
    for (long i = 0; i < nn; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(nwave_sweep_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

SpeedFrame SpeedFrame::make(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("speed frame: c must be positive");
    const double s = std::sqrt(c * c + 4.0);
    return {c, 1.0 / (c * c), -2.0 * c / (c + s), 0.5 * c * (c + s)};
}

double Phi(double tau, const SpeedFrame& fr) {
    if (!(tau >= 0.0)) throw DomainError("Phi: tau must be >= 0");
    const double den = fr.nu * std::exp(-fr.lambda * tau) - fr.lambda * std::exp(-fr.nu * tau);
    return (fr.nu - fr.lambda) / den;
}

double one_minus_Phi(double tau, const SpeedFrame& fr) {
    if (!(tau >= 0.0)) throw DomainError("Phi: tau must be >= 0");
    // The first-order terms of nu (e^{-lambda tau} - 1) - lambda (e^{-nu tau} - 1) cancel.
    const double num = fr.nu * expm1_minus_x(-fr.lambda * tau) -
                       fr.lambda * expm1_minus_x(-fr.nu * tau);
    const double den = fr.nu * std::exp(-fr.lambda * tau) - fr.lambda * std::exp(-fr.nu * tau);
    return num / den;
}

double tau_of_c(double P, double c) {
    if (!(P > 1.0)) throw DomainError("tau_of_c: P must exceed 1");
    const SpeedFrame fr = SpeedFrame::make(c);
    return numerics::solve_expanding([&](double t) { return one_minus_Phi(t, fr) - 1.0 / P; },
                                     0.0, 1.0, 1e-15);
}

double tau_hat(double P) {
    if (!(P > 1.0)) throw DomainError("tau_hat: P must exceed 1");
    return std::log(P / (P - 1.0));
}

double boundary_lhs(double tau, double c) {
    const double h = c * tau;
    const double S = std::sqrt(h * h * (c * c + 4.0) + 4.0);
    return e * h * h / (2.0 + S) * std::exp(2.0 * (h * h + 1.0) / (S + c * h));
}

double T_of_c(double P, double c) {
    if (!(P > 0.0)) throw DomainError("T_of_c: P must be positive");
    if (!(c > 0.0)) throw DomainError("T_of_c: c must be positive");
    return numerics::solve_expanding([&](double t) { return boundary_lhs(t, c) - 1.0 / P; }, 0.0,
                                     1.0, 1e-15);
}

double T_star(double P) {
    if (!(P > 0.0)) throw DomainError("T_star: P must be positive");
    return numerics::solve_expanding([&](double T) { return P * e * T * std::exp(T) - 1.0; }, 0.0,
                                     1.0, 1e-15);
}

double tau_star() {
    return numerics::solve_bracketed([](double t) { return t * std::exp(1.0 + t) - 1.0; },
                                     {0.0, 1.0}, 1e-15);
}

NmConditions nm_necessary(const ModelParams& params) {
    const double p = params.p(), tau = params.tau(), P = params.P();
    NmConditions nm;
    nm.p_gt_e2 = p > std::exp(2.0);
    nm.upper_value = P * tau * std::exp(1.0 + tau);
    nm.lower_value = p * tau * std::exp(tau - 1.0);
    nm.upper_ok = nm.upper_value < 1.0;
    nm.lower_ok = nm.lower_value > 1.0;
    const double mu = characteristic::mu_root(params);
    nm.e_mu_tau = std::exp(-mu * tau);
    nm.e_mu_tau_ok = nm.e_mu_tau < 0.5;
    nm.qbar2 = dirichlet::coefficients(params, mu, 2)[1];
    nm.qbar2_ok = nm.qbar2 > -1.0 && nm.qbar2 < 0.0;
    nm.holds = nm.p_gt_e2 && nm.upper_ok && nm.lower_ok;
    return nm;
}

Membership membership(const ModelParams& params, double c) {
    const double P = params.P(), tau = params.tau();
    Membership m;
    m.Dm_by_roots = !characteristic::negative_roots_at_kappa(params, c).empty();
    if (P > 0.0) {
        m.T_c = T_of_c(P, c);
        m.Dm_by_boundary = tau <= *m.T_c;
        m.near_boundary = std::abs(tau - *m.T_c) <= 1e-6;
    } else {
        m.Dm_by_boundary = true;  // a single negative root always exists
    }
    if (m.Dm_by_roots != m.Dm_by_boundary && !m.near_boundary) {
        std::ostringstream os;
        os << "D_m membership disagrees at p=" << params.p() << ", tau=" << tau << ", c=" << c
           << ": roots say " << m.Dm_by_roots << ", boundary T(c)=" << m.T_c.value_or(NAN)
           << " says " << m.Dm_by_boundary;
        throw InconsistencyError(os.str());
    }
    m.in_Dm = m.Dm_by_roots || m.Dm_by_boundary;

    if (P > 1.0) {
        m.tau_c = tau_of_c(P, c);
        m.in_Ds = one_minus_Phi(tau, SpeedFrame::make(c)) <= 1.0 / P;
    } else {
        m.in_Ds = true;
        m.Ds_by_convention = true;
    }
    return m;
}

double ck_coefficient(int k, double w) {
    if (k < 2) throw DomainError("ck_coefficient: k must be >= 2");
    if (k == 2) return 2.0 * (e - 2.0) * (w - 1.0);
    const double kk = k;
    return -std::pow(w, kk - 1.0) * (kk + 4.0) + e * kk * (kk - 1.0) * std::pow(w, kk - 2.0) -
           e * kk * (kk - 1.0) * std::pow(w, kk - 3.0) + 4.0 + kk * w;
}

double ck_A(double w, double sigma) {
    const double s2 = sigma * sigma;
    return std::exp(w * sigma) * (e * s2 * (w - 1.0) - (4.0 + w * sigma)) +
           e * s2 * (w - 1.0) * (w - 1.0) + (4.0 + w * sigma) * (1.0 + w * std::expm1(sigma));
}

double ck_discriminant(double w) {
    const double a2 = ck_coefficient(2, w), a3 = ck_coefficient(3, w), a4 = ck_coefficient(4, w);
    return 16.0 * (a3 * a3 - 3.0 * a2 * a4);
}

double ck_discriminant_factored(double w) {
    const double q1 = 6.0 * e - 7.0 * w - 4.0;
    const double q2 = 2.0 * w * w + (2.0 - 3.0 * e) * w + 1.0;
    return 16.0 * (w - 1.0) * (w - 1.0) * (q1 * q1 + 24.0 * (e - 2.0) * q2);
}

bool InclusionReport::ok() const {
    return violations.empty() && ineq22_violations.empty() && ck_coefficients_ok &&
           ck_discriminant_ok && ck_A_positive &&
           std::all_of(tau_hat_minus_T_star.begin(), tau_hat_minus_T_star.end(),
                       [](double d) { return d > 0.0; });
}

InclusionReport verify_inclusion(const std::vector<double>& P_grid,
                                 const std::vector<double>& c_grid,
                                 const std::vector<double>& tau_grid,
                                 const std::vector<double>& c22_grid, Exec exec) {
    InclusionReport rep;

    // T(c) < tau(c).
    const std::size_t nc = c_grid.size();
    std::vector<double> Ts(P_grid.size() * nc), taus(P_grid.size() * nc);
    sweep(Ts.size(), exec, [&](std::size_t idx) {
        const double P = P_grid[idx / nc], c = c_grid[idx % nc];
        Ts[idx] = T_of_c(P, c);
        taus[idx] = tau_of_c(P, c);
    });
    rep.curve_points = Ts.size();
    rep.min_gap = INFINITY;
    for (std::size_t idx = 0; idx < Ts.size(); ++idx) {
        const double gap = taus[idx] - Ts[idx];
        rep.min_gap = std::min(rep.min_gap, gap);
        if (!(gap > 0.0))
            rep.violations.push_back({P_grid[idx / nc], c_grid[idx % nc], Ts[idx], taus[idx]});
    }
    for (double P : P_grid) rep.tau_hat_minus_T_star.push_back(tau_hat(P) - T_star(P));

    // Pointwise inequality: boundary_lhs(tau, c) > 1 - Phi(tau, c).
    const std::size_t n22c = c22_grid.size();
    std::vector<Ineq22Point> pts(tau_grid.size() * n22c);
    sweep(pts.size(), exec, [&](std::size_t idx) {
        const double tau = tau_grid[idx / n22c], c = c22_grid[idx % n22c];
        const double lhs = boundary_lhs(tau, c);
        const double rhs = one_minus_Phi(tau, SpeedFrame::make(c));
        pts[idx] = {tau, c, lhs, rhs, lhs - rhs};
    });
    rep.ineq22_points = pts.size();
    double worst_rel = INFINITY;
    for (const auto& pt : pts) {
        const double rel = pt.margin / pt.lhs;
        if (rel < worst_rel) {
            worst_rel = rel;
            rep.ineq22_worst = pt;
        }
        if (!(pt.margin > 0.0)) rep.ineq22_violations.push_back(pt);
    }

    // Coefficient checks of the series A(w, sigma).
    rep.ck_coefficients_ok = rep.ck_discriminant_ok = rep.ck_A_positive = true;
    auto fail = [&](bool& flag, const std::string& msg) {
        flag = false;
        if (rep.ck_failures.size() < 20) rep.ck_failures.push_back(msg);
    };
    for (int k = 2; k <= 12; ++k) {
        if (std::abs(ck_coefficient(k, 1.0)) > 1e-12 * k * k)
            fail(rep.ck_coefficients_ok, "A_" + std::to_string(k) + "(1) != 0");
        for (int i = 1; i <= 200; ++i) {
            const double w = 1.0 + i / 200.0;
            if (k == 3 && w > 1.75) continue;
            if (!(ck_coefficient(k, w) > 0.0))
                fail(rep.ck_coefficients_ok,
                     "A_" + std::to_string(k) + " not positive at w=" + std::to_string(w));
        }
    }
    for (int i = 1; i <= 200; ++i) {
        const double w = 1.0 + i / 200.0;
        const double d1 = ck_discriminant(w), d2 = ck_discriminant_factored(w);
        if (!(d1 < 0.0) || std::abs(d1 - d2) > 1e-10 * std::abs(d2))
            fail(rep.ck_discriminant_ok, "D(w) check failed at w=" + std::to_string(w));
    }
    const auto sigmas = numerics::logspace(1e-2, 20.0, 200);
    for (int i = 1; i <= 100; ++i) {
        const double w = 1.0 + i / 100.0;
        for (double s : sigmas)
            if (!(ck_A(w, s) > 0.0))
                fail(rep.ck_A_positive, "A(w, sigma) <= 0 at w=" + std::to_string(w) +
                                            ", sigma=" + std::to_string(s));
    }
    return rep;
}

std::vector<RegionRow> figure2_grid(double tau_lo, double tau_hi, double p_lo, double p_hi,
                                    int n_tau, int n_p, Exec exec) {
    if (!(tau_lo > 0.0 && tau_hi > tau_lo)) throw DomainError("figure2_grid: bad tau range");
    if (!(p_lo > 1.0 && p_hi > p_lo)) throw DomainError("figure2_grid: p range must lie above 1");
    if (n_tau < 1 || n_p < 1) throw DomainError("figure2_grid: resolution must be positive");
    const auto taus = numerics::linspace(tau_lo, tau_hi, static_cast<std::size_t>(n_tau));
    const auto ll = numerics::linspace(std::log(std::log(p_lo)), std::log(std::log(p_hi)),
                                       static_cast<std::size_t>(n_p));
    const std::size_t np = ll.size();
    std::vector<RegionRow> rows(taus.size() * np);
    sweep(rows.size(), exec, [&](std::size_t idx) {
        const double tau = taus[idx / np];
        const double p = std::exp(std::exp(ll[idx % np]));
        const ModelParams params(p, tau);
        RegionRow r{};
        r.tau = tau;
        r.p = p;
        r.lnlnp = ll[idx % np];
        const double J_upper = std::exp(1.0 + std::exp(-1.0 - tau) / tau);
        r.in_J = p > std::exp(2.0) && p < J_upper;
        r.zeta = dirichlet::zeta(params);
        r.margin = r.zeta - params.kappa();
        r.zeta_gt_lnp = r.margin > 0.0;
        r.flag = r.in_J && r.zeta_gt_lnp;
        rows[idx] = r;
    });
    return rows;
}

MainHypotheses proposition_main_hypotheses(const ModelParams& params, double c) {
    MainHypotheses h;
    const double P = params.P();
    h.positive_root = characteristic::has_positive_root_at_zero(params, c);
    h.ce_lhs = Phi(params.tau(), SpeedFrame::make(c));
    h.ce_rhs = (P * P - P) / (P * P + 1.0);
    h.ce = h.ce_lhs >= h.ce_rhs;
    h.feedback = model::feedback_holds(params);
    h.one_minus_inv_P = 1.0 - 1.0 / P;
    h.remark_inequality = h.one_minus_inv_P > h.ce_rhs;
    return h;
}

}  // namespace nwave::atlas
