#include "nwave/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nwave/errors.hpp"

namespace nwave {

NoSignChange::NoSignChange(double lo, double hi, double flo, double fhi)
    : Error([&] {
          std::ostringstream os;
          os << "no sign change on [" << lo << ", " << hi << "]: f(lo)=" << flo
             << ", f(hi)=" << fhi;
          return os.str();
      }()),
      lo(lo), hi(hi), flo(flo), fhi(fhi) {}

namespace numerics {

Bracket::Bracket(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo < hi)) throw DomainError("bracket requires lo < hi");
}

PowerSeries::PowerSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("power series needs at least one coefficient");
}

PowerSeries PowerSeries::zeros(std::size_t order) {
    return PowerSeries(std::vector<double>(order + 1, 0.0));
}

PowerSeries PowerSeries::operator-() const {
    PowerSeries r = *this;
    for (double& c : r.coeffs_) c = -c;
    return r;
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
    if (a.order() != b.order()) throw DomainError("series_mul: truncation order mismatch");
    const std::size_t n = a.order();
    PowerSeries r = PowerSeries::zeros(n);
    for (std::size_t i = 0; i <= n; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

PowerSeries series_exp(const PowerSeries& a) {
    if (a[0] != 0.0) throw DomainError("series_exp: constant term must be zero");
    const std::size_t n = a.order();
    PowerSeries e = PowerSeries::zeros(n);
    e[0] = 1.0;
    for (std::size_t m = 1; m <= n; ++m) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= m; ++k) acc += static_cast<double>(k) * a[k] * e[m - k];
        e[m] = acc / static_cast<double>(m);
    }
    return e;
}

double lower_incomplete_gamma(double z, double s) {
    if (!(z >= 0.0)) throw DomainError("lower_incomplete_gamma: limit z must be >= 0");
    if (!(s > 0.0)) throw DomainError("lower_incomplete_gamma: exponent s must be > 0");
    if (z == 0.0) return 0.0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double prefactor = std::exp(s * std::log(z) - z);

    if (z < s + 1.0) {
        // z^s e^{-z} sum_k z^k / (s (s+1) ... (s+k))
        double term = 1.0 / s;
        double sum = term;
        for (int k = 1; k < 1000; ++k) {
            term *= z / (s + k);
            sum += term;
            if (std::abs(term) < std::abs(sum) * eps) break;
        }
        return prefactor * sum;
    }

    // Upper tail by the modified Lentz continued fraction, then complement.
    constexpr double tiny = 1e-300;
    double b = z + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return std::tgamma(s) - prefactor * h;
}

double solve_bracketed(const ScalarFn& f, Bracket bracket, double tol, int max_iter) {
    double a = bracket.lo(), b = bracket.hi();
    double fa = f(a), fb = f(b);
    if (std::isnan(fa) || std::isnan(fb)) throw DomainError("solve_bracketed: f is NaN at bracket end");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (std::signbit(fa) == std::signbit(fb)) throw NoSignChange(a, b, fa, fb);

    // Illinois-modified regula falsi; a bisection step is forced whenever the
    // previous step failed to halve the bracket.
    double ga = fa, gb = fb;  // Illinois-weighted copies
    int side = 0;
    bool force_bisect = false;
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        const double width = b - a;
        double x = (a * gb - b * ga) / (gb - ga);
        const double guard = 0.25 * std::min(tol, width);
        if (force_bisect || !(x > a + guard && x < b - guard)) x = 0.5 * (a + b);
        const double fx = f(x);
        if (std::isnan(fx)) throw DomainError("solve_bracketed: f returned NaN");
        if (fx == 0.0) return x;
        if (std::signbit(fx) == std::signbit(fa)) {
            a = x;
            fa = ga = fx;
            if (side == -1) gb *= 0.5;
            side = -1;
        } else {
            b = x;
            fb = gb = fx;
            if (side == +1) ga *= 0.5;
            side = +1;
        }
        force_bisect = (b - a) > 0.5 * width;
    }
    return std::abs(fa) <= std::abs(fb) ? a : b;
}

double solve_expanding(const ScalarFn& f, double lo, double hi, double tol, double grow,
                       double hi_limit) {
    const double flo = f(lo);
    if (flo == 0.0) return lo;
    double fhi = f(hi);
    while (std::signbit(flo) == std::signbit(fhi) && fhi != 0.0) {
        if (hi > hi_limit) throw NoSignChange(lo, hi, flo, fhi);
        hi *= grow;
        fhi = f(hi);
    }
    return solve_bracketed(f, Bracket(lo, hi), tol);
}

namespace {

struct SimpsonState {
    const ScalarFn& f;
    int max_depth;
    bool exhausted = false;
};

double simpson_step(SimpsonState& st, double a, double fa, double m, double fm, double b,
                    double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = st.f(lm), frm = st.f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth >= st.max_depth) {
        st.exhausted = true;
        return left + right + delta / 15.0;
    }
    if (depth >= 3 && std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    return simpson_step(st, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1) +
           simpson_step(st, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1);
}

}  // namespace

double integrate_adaptive(const ScalarFn& f, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    if (b < a) return -integrate_adaptive(f, b, a, tol, max_depth);
    SimpsonState st{f, max_depth};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double eps = tol * (1.0 + std::abs(whole));
    const double result = simpson_step(st, a, fa, m, fm, b, fb, whole, eps, 0);
    if (st.exhausted)
        throw QuadratureError("integrate_adaptive: refinement depth exhausted", result);
    return result;
}

double maximize_golden(const ScalarFn& f, double lo, double hi, double tol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    while ((b - a) > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double hermite(double t0, double t1, double u0, double u1, double d0, double d1, double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * u0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * u1 +
           (s3 - s2) * h * d1;
}

double hermite_derivative(double t0, double t1, double u0, double u1, double d0, double d1,
                          double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    return ((6 * s2 - 6 * s) * u0 + (-6 * s2 + 6 * s) * u1) / h + (3 * s2 - 4 * s + 1) * d0 +
           (3 * s2 - 2 * s) * d1;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("linear_fit: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw InsufficientPoints("linear_fit: need at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double ssr = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - (fit.slope * x[i] + fit.intercept);
            ssr += r * r;
        }
        fit.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    }
    return fit;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0 && hi > 0.0)) throw DomainError("logspace: bounds must be positive");
    std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
    for (double& x : v) x = std::exp(x);
    return v;
}

}  // namespace numerics
}  // namespace nwave
