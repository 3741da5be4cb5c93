#ifndef NWAVE_ATLAS_HPP
#define NWAVE_ATLAS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nwave/exec.hpp"
#include "nwave/model.hpp"

namespace nwave::atlas {

using model::ModelParams;

/// Speed-dependent constants; eps = c^{-2} is the profile-equation coefficient.
struct SpeedFrame {
    double c, eps, lambda, nu;
    static SpeedFrame make(double c);
};

/// (nu - lambda) / (nu e^{-lambda tau} - lambda e^{-nu tau}).
double Phi(double tau, const SpeedFrame& frame);
/// 1 - Phi, without cancellation at small tau.
double one_minus_Phi(double tau, const SpeedFrame& frame);

/// Unique positive root of Phi(tau, c) = 1 - 1/P. Requires P > 1.
double tau_of_c(double P, double c);
/// ln(P / (P - 1)), the limit of tau_of_c as c grows.
double tau_hat(double P);

/// Left side of the boundary equation for T(c), evaluated through h = c tau.
double boundary_lhs(double tau, double c);
/// Unique positive root of boundary_lhs(tau, c) = 1/P. Requires P > 0.
double T_of_c(double P, double c);
/// Root of P e T e^T = 1, the limit of T_of_c as c grows.
double T_star(double P);
/// Root of tau e^{1+tau} = 1.
double tau_star();

struct NmConditions {
    bool p_gt_e2 = false;
    double upper_value = 0;  // P tau e^{1+tau}, needs < 1
    double lower_value = 0;  // p tau e^{tau-1}, needs > 1
    double e_mu_tau = 0;     // e^{-mu tau}, < 0.5 expected
    double qbar2 = 0;        // in (-1, 0) expected
    bool upper_ok = false, lower_ok = false, e_mu_tau_ok = false, qbar2_ok = false;
    bool holds = false;      // p > e^2 and both bounds
};

/// Necessary conditions for a non-monotone non-oscillating wave.
NmConditions nm_necessary(const ModelParams& params);

struct Membership {
    bool in_Dm = false;
    bool in_Ds = false;
    bool Dm_by_roots = false;
    bool Dm_by_boundary = false;
    bool near_boundary = false;  // |tau - T(c)| <= 1e-6, both computations accepted
    std::optional<double> T_c;   // when P > 0
    std::optional<double> tau_c; // when P > 1
    bool Ds_by_convention = false;  // P <= 1
};

/// Both sets are closed. D_m is computed from the negative real roots and from
/// tau <= T(c); a disagreement off the boundary band throws InconsistencyError.
Membership membership(const ModelParams& params, double c);

struct InclusionViolation {
    double P, c, T, tau;
};

struct Ineq22Point {
    double tau, c, lhs, rhs, margin;
};

struct InclusionReport {
    std::size_t curve_points = 0;
    double min_gap = 0;  // min over samples of tau(c) - T(c)
    std::vector<InclusionViolation> violations;
    std::vector<double> tau_hat_minus_T_star;  // per P

    std::size_t ineq22_points = 0;
    Ineq22Point ineq22_worst{};        // smallest relative margin
    std::vector<Ineq22Point> ineq22_violations;

    bool ck_coefficients_ok = false;  // A_k > 0 where claimed, A_k(1) = 0
    bool ck_discriminant_ok = false;  // D(w) < 0 on (1, 2]
    bool ck_A_positive = false;       // A(w, sigma) > 0 on the sample grid
    std::vector<std::string> ck_failures;

    bool ok() const;
};

/// T(c) < tau(c) on P x c, inequality margins on tau x c, and the coefficient
/// checks behind them.
InclusionReport verify_inclusion(const std::vector<double>& P_grid,
                                 const std::vector<double>& c_grid,
                                 const std::vector<double>& tau_grid,
                                 const std::vector<double>& c22_grid, Exec exec = Exec::Parallel);

/// Coefficient A_k(w) of the series A(w, sigma) = w sum_k A_k(w) sigma^k / k!.
double ck_coefficient(int k, double w);
double ck_A(double w, double sigma);
/// 16 (A_3^2 - 3 A_2 A_4), and the factored form.
double ck_discriminant(double w);
double ck_discriminant_factored(double w);

struct RegionRow {
    double tau, p, lnlnp;
    bool in_J, zeta_gt_lnp, flag;
    double zeta, margin;  // margin = zeta - ln p
};

/// Uniform in tau and in ln ln p; row-major with tau varying slowest.
std::vector<RegionRow> figure2_grid(double tau_lo, double tau_hi, double p_lo, double p_hi,
                                    int n_tau, int n_p, Exec exec = Exec::Parallel);

struct MainHypotheses {
    bool positive_root = false;
    double ce_lhs = 0;  // Phi(tau, c)
    double ce_rhs = 0;  // (P^2 - P) / (P^2 + 1)
    bool ce = false;
    bool feedback = false;
    double one_minus_inv_P = 0;
    bool remark_inequality = false;  // 1 - 1/P > ce_rhs
};

MainHypotheses proposition_main_hypotheses(const ModelParams& params, double c);

}  // namespace nwave::atlas

#endif
