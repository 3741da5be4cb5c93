#include "nwave/dirichlet.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nwave/characteristic.hpp"
#include "nwave/errors.hpp"
#include "nwave/numerics.hpp"

namespace nwave::dirichlet {

using numerics::PowerSeries;

std::vector<double> coefficients(const ModelParams& params, double mu, int N) {
    if (N < 2) throw DomainError("coefficients: N must be >= 2");
    const double p = params.p(), tau = params.tau();
    const auto chi = characteristic::characteristic(characteristic::CharKind::AtZeroDDE, params);

    std::vector<double> q{1.0};
    PowerSeries v = PowerSeries::zeros(static_cast<std::size_t>(N));
    v[1] = std::exp(-mu * tau);
    for (int n = 2; n <= N; ++n) {
        // Coefficient n of p v e^{-v} with v_n = 0 carries everything but the
        // linear part, which is absorbed into chi(n mu).
        const std::size_t order = static_cast<std::size_t>(n);
        PowerSeries vt = PowerSeries::zeros(order);
        for (std::size_t j = 1; j < order; ++j) vt[j] = v[j];
        const double rhs = p * numerics::series_mul(vt, numerics::series_exp(-vt))[order];
        const double qn = rhs / chi.value(n * mu);
        if (!std::isfinite(qn) || std::abs(qn) > 1e12)
            throw SeriesOverflow("coefficients: |qbar_" + std::to_string(n) + "| exceeds 1e12");
        q.push_back(qn);
        v[order] = qn * std::exp(-n * mu * tau);
    }
    return q;
}

DirichletExpansion::DirichletExpansion(const ModelParams& params, double mu,
                                       std::vector<double> coeffs)
    : params_(params), mu_(mu), coeffs_(std::move(coeffs)) {}

DirichletExpansion DirichletExpansion::build(const ModelParams& params, int N) {
    if (!(params.tau() > 0.0)) throw DomainError("series expansion needs tau > 0");
    const double mu = characteristic::mu_root(params);
    DirichletExpansion e(params, mu, coefficients(params, mu, N));
    e.eps_ = e.optimal_eps();
    e.horizon_ = e.horizon_at(e.eps_);
    return e;
}

DirichletExpansion DirichletExpansion::build(const ModelParams& params, int N, double eps) {
    if (!(params.tau() > 0.0)) throw DomainError("series expansion needs tau > 0");
    const double mu = characteristic::mu_root(params);
    DirichletExpansion e(params, mu, coefficients(params, mu, N));
    e.horizon_ = e.horizon_at(eps);
    e.eps_ = eps;
    return e;
}

double DirichletExpansion::eps_max() const { return std::expm1(mu_ * params_.tau()); }

double DirichletExpansion::sigma_at(double eps) const {
    if (!(eps > 0.0 && eps < eps_max()))
        throw DomainError("series eps must lie in (0, e^{mu tau} - 1)");
    const double q2 = std::abs(qbar(2));
    return eps * std::log1p(1.0 / (q2 * (1.0 + eps)));
}

double DirichletExpansion::horizon_at(double eps) const {
    return params_.tau() + std::log(sigma_at(eps) / (1.0 + eps)) / mu_;
}

double DirichletExpansion::optimal_eps() const {
    const double hi = eps_max();
    const auto grid = numerics::logspace(hi * 1e-6, hi * (1.0 - 1e-9), 200);
    std::size_t best = 0;
    double best_T = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double T = horizon_at(grid[i]);
        if (T > best_T) {
            best_T = T;
            best = i;
        }
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double up = grid[best + 1 < grid.size() ? best + 1 : best];
    if (!(lo < up)) return grid[best];
    const double e = numerics::maximize_golden([&](double x) { return horizon_at(x); }, lo, up,
                                               1e-12);
    return horizon_at(e) >= best_T ? e : grid[best];
}

SeriesPoint DirichletExpansion::sum(double t) const {
    const double x = std::exp(mu_ * t);
    double value = 0, deriv = 0, xn = 1, last = 0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        xn *= x;
        const double term = coeffs_[i] * xn;
        value += term;
        deriv += static_cast<double>(i + 1) * mu_ * term;
        last = term;
    }
    return {value, deriv, std::abs(last)};
}

SeriesPoint DirichletExpansion::evaluate(double t) const {
    if (!(t < horizon_))
        throw NotCertified("series evaluated at t = " + std::to_string(t) +
                           " beyond its certified horizon " + std::to_string(horizon_));
    return sum(t);
}

double DirichletExpansion::u1(double t) const { return std::exp(mu_ * t); }

double DirichletExpansion::u2(double t) const {
    const double x = std::exp(mu_ * t);
    return x + qbar(2) * x * x;
}

double DirichletExpansion::residual(double t) const {
    const SeriesPoint now = evaluate(t);
    const SeriesPoint lag = evaluate(t - params_.tau());
    return now.derivative + now.value - model::birth(lag.value, 0, params_);
}

double DirichletExpansion::handoff_time() const {
    return std::min(0.0, horizon_ - 0.5 / mu_);
}

namespace {

double qbar2(const ModelParams& params, double mu) {
    const auto chi = characteristic::characteristic(characteristic::CharKind::AtZeroDDE, params);
    return -params.p() * std::exp(-2.0 * mu * params.tau()) / chi.value(2.0 * mu);
}

}  // namespace

double zeta(const ModelParams& params) {
    const double mu = characteristic::mu_root(params);
    const double q2 = qbar2(params, mu);
    const double m = 1.0 / mu, tau = params.tau();
    const double lo = std::exp(-mu * tau);
    auto gam = numerics::lower_incomplete_gamma;
    const double bracket = gam(1.0, m + 1.0) - gam(lo, m + 1.0) +
                           q2 * (gam(1.0, m + 2.0) - gam(lo, m + 2.0));
    return (1.0 + q2) * std::exp(-tau) + params.p() * m * bracket;
}

double zeta_quadrature(const ModelParams& params) {
    const double mu = characteristic::mu_root(params);
    const double q2 = qbar2(params, mu);
    const double tau = params.tau();
    auto integrand = [&](double s) {
        const double x = std::exp(mu * s);
        return x * std::exp(s) * (1.0 + q2 * x) * std::exp(-x);
    };
    const double I = tau > 0.0 ? numerics::integrate_adaptive(integrand, -tau, 0.0, 1e-14) : 0.0;
    return (1.0 + q2) * std::exp(-tau) + params.p() * I;
}

}  // namespace nwave::dirichlet
