#ifndef NWAVE_DIRICHLET_HPP
#define NWAVE_DIRICHLET_HPP

#include <vector>

#include "nwave/model.hpp"

namespace nwave::dirichlet {

using model::ModelParams;

/// Normalised coefficients qbar_1 = 1, qbar_2, ..., qbar_N of
/// u*(t) = sum_n qbar_n e^{n mu t}. Throws SeriesOverflow if |qbar_n| > 1e12.
std::vector<double> coefficients(const ModelParams& params, double mu, int N);

struct SeriesPoint {
    double value;
    double derivative;
    double tail;  // magnitude of the last kept term
};

/// Dirichlet expansion of the heteroclinic solution u*. Immutable; safe to share.
/// The eps here is the convergence parameter of the series, unrelated to c^{-2}.
class DirichletExpansion {
public:
    /// Requires tau > 0. Without an explicit eps the horizon is maximised over eps.
    static DirichletExpansion build(const ModelParams& params, int N = 40);
    static DirichletExpansion build(const ModelParams& params, int N, double eps);

    const ModelParams& params() const { return params_; }
    double mu() const { return mu_; }
    int order() const { return static_cast<int>(coeffs_.size()); }
    /// qbar_n, 1-based.
    double qbar(int n) const { return coeffs_.at(static_cast<std::size_t>(n - 1)); }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double eps() const { return eps_; }
    double horizon() const { return horizon_; }
    /// Upper end of the admissible eps range, e^{mu tau} - 1.
    double eps_max() const;
    /// tau + mu^{-1} ln[eps/(1+eps) ln(1 + 1/(|qbar_2|(1+eps)))]. DomainError outside (0, eps_max).
    double horizon_at(double eps) const;
    /// The first coefficient of the unnormalised series, eps ln(1 + 1/(|qbar_2|(1+eps))).
    double sigma_at(double eps) const;
    /// Maximiser of horizon_at: 200-point log grid, then golden-section refinement.
    double optimal_eps() const;

    /// Partial sum and its derivative. Throws NotCertified for t >= horizon().
    SeriesPoint evaluate(double t) const;
    double u1(double t) const;
    double u2(double t) const;
    /// u'(t) + u(t) - f(u(t - tau)) of the partial sum.
    double residual(double t) const;

    /// Where the integrator takes over: min(0, horizon - 0.5/mu).
    double handoff_time() const;

private:
    DirichletExpansion(const ModelParams& params, double mu, std::vector<double> coeffs);
    SeriesPoint sum(double t) const;

    ModelParams params_;
    double mu_;
    std::vector<double> coeffs_;
    double eps_ = 0, horizon_ = 0;
};

/// Closed form through lower incomplete gamma functions.
double zeta(const ModelParams& params);
/// (1+qbar_2) e^{-tau} + p int_{-tau}^0 e^{mu s} e^s (1 + qbar_2 e^{mu s}) exp(-e^{mu s}) ds.
double zeta_quadrature(const ModelParams& params);

}  // namespace nwave::dirichlet

#endif
