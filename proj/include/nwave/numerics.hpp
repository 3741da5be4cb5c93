#ifndef NWAVE_NUMERICS_HPP
#define NWAVE_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nwave::numerics {

using ScalarFn = std::function<double(double)>;

/// Closed interval [lo, hi] with lo < hi.
class Bracket {
public:
    Bracket(double lo, double hi);
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double width() const { return hi_ - lo_; }

private:
    double lo_, hi_;
};

/// Truncated power series a_0 + a_1 x + ... + a_N x^N.
class PowerSeries {
public:
    explicit PowerSeries(std::vector<double> coeffs);
    static PowerSeries zeros(std::size_t order);

    std::size_t order() const { return coeffs_.size() - 1; }
    double operator[](std::size_t i) const { return coeffs_[i]; }
    double& operator[](std::size_t i) { return coeffs_[i]; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    PowerSeries operator-() const;

private:
    std::vector<double> coeffs_;
};

/// Product truncated at the common order. Throws DomainError on order mismatch.
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);

/// exp(a) truncated at order N, by the recurrence n E_n = sum_k k a_k E_{n-k}.
/// Requires a_0 == 0.
PowerSeries series_exp(const PowerSeries& a);

/// Lower incomplete gamma integral of t^{s-1} e^{-t} over [0, z].
/// Argument order is (limit, exponent).
double lower_incomplete_gamma(double z, double s);

/// Root of a continuous f with a sign change on the bracket. The returned r lies
/// in a final bracket of width <= tol. Throws NoSignChange.
double solve_bracketed(const ScalarFn& f, Bracket bracket, double tol = 1e-12,
                       int max_iter = 200);

/// Widens [lo, hi] upward (hi *= grow) until f changes sign, then solves.
double solve_expanding(const ScalarFn& f, double lo, double hi, double tol = 1e-12,
                       double grow = 2.0, double hi_limit = 1e12);

/// Adaptive Simpson quadrature; |error| <= tol * (1 + |result|).
/// Throws QuadratureError (carrying the best estimate) past max_depth.
double integrate_adaptive(const ScalarFn& f, double a, double b, double tol = 1e-12,
                          int max_depth = 60);

/// Golden-section search for the maximiser of a unimodal f on [lo, hi].
double maximize_golden(const ScalarFn& f, double lo, double hi, double tol = 1e-12);

/// Cubic Hermite interpolant on [t0, t1] from endpoint values and slopes.
double hermite(double t0, double t1, double u0, double u1, double d0, double d1,
               double t);
double hermite_derivative(double t0, double t1, double u0, double u1, double d0,
                          double d1, double t);

struct LinearFit {
    double slope = 0, intercept = 0, slope_stderr = 0;
    std::size_t n = 0;
};

/// Ordinary least squares y = slope * x + intercept. Needs at least 2 points.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

std::vector<double> linspace(double lo, double hi, std::size_t n);
std::vector<double> logspace(double lo, double hi, std::size_t n);

}  // namespace nwave::numerics

#endif
