#include "nwave/characteristic.hpp"

#include <algorithm>
#include <cmath>

#include "nwave/errors.hpp"
#include "nwave/numerics.hpp"

namespace nwave::characteristic {

namespace {

int sgn(double x) { return (x > 0) - (x < 0); }

double root_tol(double a, double b) {
    return 1e-14 * std::max({1.0, std::abs(a), std::abs(b)});
}

double require_speed(std::optional<double> speed, CharKind kind) {
    if (!speed) throw DomainError(std::string("characteristic ") + std::string(to_string(kind)) +
                                  " needs a speed parameter");
    return *speed;
}

// Signs of g and g' in the limits z -> -inf and z -> +inf.
struct Limits {
    int g, slope;
};

Limits limits_minus_inf(const ExpQuadratic& g) {
    if (g.d != 0.0 && g.k > 0.0) return {sgn(g.d), -sgn(g.d)};
    if (g.a != 0.0) return {sgn(g.a), -sgn(g.a)};
    return {-sgn(g.b), sgn(g.b)};
}

Limits limits_plus_inf(const ExpQuadratic& g) {
    if (g.a != 0.0) return {sgn(g.a), sgn(g.a)};
    return {sgn(g.b), sgn(g.b)};
}

}  // namespace

std::string_view to_string(CharKind kind) {
    switch (kind) {
        case CharKind::AtZeroDDE: return "AtZeroDDE";
        case CharKind::AtKappaDDE: return "AtKappaDDE";
        case CharKind::AtZeroProfile: return "AtZeroProfile";
        case CharKind::AtKappaProfileEps: return "AtKappaProfileEps";
        case CharKind::AtKappaProfileC: return "AtKappaProfileC";
    }
    return "?";
}

std::string_view to_string(TailClass tail) {
    return tail == TailClass::EventuallyMonotone ? "EventuallyMonotone" : "OscillatoryTail";
}

double ExpQuadratic::value(double z) const {
    return (a * z + b) * z + c + d * std::exp(-k * z);
}

double ExpQuadratic::slope(double z) const {
    return 2.0 * a * z + b - d * k * std::exp(-k * z);
}

double ExpQuadratic::curvature(double z) const {
    return 2.0 * a + d * k * k * std::exp(-k * z);
}

std::optional<double> ExpQuadratic::inflection() const {
    const double dk2 = d * k * k;
    if (dk2 == 0.0) return std::nullopt;
    const double ratio = -2.0 * a / dk2;
    if (!(ratio > 0.0)) return std::nullopt;
    return -std::log(ratio) / k;
}

ExpQuadratic characteristic(CharKind kind, const ModelParams& params,
                            std::optional<double> speed) {
    const double p = params.p(), tau = params.tau(), P = params.P();
    switch (kind) {
        case CharKind::AtZeroDDE: return {0.0, 1.0, 1.0, -p, tau};
        case CharKind::AtKappaDDE: return {0.0, 1.0, 1.0, P, tau};
        case CharKind::AtZeroProfile: {
            const double eps = require_speed(speed, kind);
            return {eps, -1.0, -1.0, p, tau};
        }
        case CharKind::AtKappaProfileEps: {
            const double eps = require_speed(speed, kind);
            return {eps, -1.0, -1.0, -P, tau};
        }
        case CharKind::AtKappaProfileC: {
            const double c = require_speed(speed, kind);
            return {1.0, -c, -1.0, -P, c * tau};
        }
    }
    throw DomainError("characteristic: unknown kind");
}

double char_value(CharKind kind, double z, const ModelParams& params,
                  std::optional<double> speed) {
    return characteristic(kind, params, speed).value(z);
}

int RootReport::count() const {
    int n = 0;
    for (const auto& r : roots) n += r.multiplicity;
    return n;
}

std::vector<RealRoot> roots_in_window(const ExpQuadratic& g, double lo, double hi) {
    if (!(lo < hi)) throw DomainError("roots_in_window: empty window");
    auto slope = [&](double z) { return g.slope(z); };
    auto value = [&](double z) { return g.value(z); };

    // g' is monotone on either side of the inflection point.
    std::vector<double> slope_breaks{lo};
    if (auto zi = g.inflection(); zi && *zi > lo && *zi < hi) slope_breaks.push_back(*zi);
    slope_breaks.push_back(hi);

    std::vector<double> crit;
    for (std::size_t i = 0; i + 1 < slope_breaks.size(); ++i) {
        const double x0 = slope_breaks[i], x1 = slope_breaks[i + 1];
        const double s0 = slope(x0), s1 = slope(x1);
        if (s0 == 0.0 && x0 > lo) crit.push_back(x0);
        if (sgn(s0) * sgn(s1) < 0)
            crit.push_back(numerics::solve_bracketed(slope, {x0, x1}, root_tol(x0, x1)));
    }
    std::sort(crit.begin(), crit.end());

    std::vector<double> breaks{lo};
    for (double z : crit)
        if (z > breaks.back() && z < hi) breaks.push_back(z);
    breaks.push_back(hi);

    std::vector<RealRoot> roots;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double x0 = breaks[i], x1 = breaks[i + 1];
        const double g0 = value(x0), g1 = value(x1);
        if (g0 == 0.0 && (roots.empty() || roots.back().z != x0)) roots.push_back({x0, 1});
        if (sgn(g0) * sgn(g1) < 0)
            roots.push_back({numerics::solve_bracketed(value, {x0, x1}, root_tol(x0, x1)), 1});
    }
    if (value(hi) == 0.0 && (roots.empty() || roots.back().z != hi)) roots.push_back({hi, 1});

    // Tangencies: merge roots clustered at a near-zero critical value.
    for (double zc : crit) {
        if (zc <= lo || zc >= hi) continue;
        if (std::abs(value(zc)) > 1e-9 * (1.0 + zc * zc)) continue;
        const double band = 1e-6 * (1.0 + std::abs(zc));
        std::erase_if(roots, [&](const RealRoot& r) { return std::abs(r.z - zc) <= band; });
        roots.push_back({zc, 2});
    }
    std::sort(roots.begin(), roots.end(),
              [](const RealRoot& x, const RealRoot& y) { return x.z < y.z; });
    return roots;
}

double certified_lower(const ExpQuadratic& g, double lo) {
    const Limits lim = limits_minus_inf(g);
    const auto zi = g.inflection();
    double z = std::min(lo, -1.0);
    for (int it = 0; it < 400; ++it) {
        const bool past_inflection = !zi || z < *zi;
        if (past_inflection && sgn(g.slope(z)) == lim.slope && sgn(g.value(z)) == lim.g) return z;
        z = 2.0 * z - 1.0;
    }
    throw DomainError("certified_lower: could not certify the left tail");
}

double certified_upper(const ExpQuadratic& g, double hi) {
    const Limits lim = limits_plus_inf(g);
    const auto zi = g.inflection();
    double z = std::max(hi, 1.0);
    for (int it = 0; it < 400; ++it) {
        const bool past_inflection = !zi || z > *zi;
        if (past_inflection && sgn(g.slope(z)) == lim.slope && sgn(g.value(z)) == lim.g) return z;
        z = 2.0 * z + 1.0;
    }
    throw DomainError("certified_upper: could not certify the right tail");
}

RootReport real_roots(CharKind kind, const ModelParams& params, std::optional<double> speed) {
    const ExpQuadratic g = characteristic(kind, params, speed);
    RootReport rep{kind, {}, certified_lower(g, -1.0), certified_upper(g, 1.0)};
    rep.roots = roots_in_window(g, rep.z_lo, rep.z_hi);
    return rep;
}

double mu_root(const ModelParams& params) {
    const ExpQuadratic g = characteristic(CharKind::AtZeroDDE, params);
    // g(0) = 1 - p < 0 and g(p) > 0; g' = 1 + p tau e^{-z tau} > 0.
    return numerics::solve_bracketed([&](double z) { return g.value(z); }, {0.0, params.p()},
                                     1e-14 * params.p());
}

RootReport negative_roots_at_kappa(const ModelParams& params, double c) {
    if (!(c > 0.0)) throw DomainError("negative_roots_at_kappa: c must be positive");
    const ExpQuadratic g = characteristic(CharKind::AtKappaProfileC, params, c);
    const double P = params.P();
    const double window = -(1.0 + std::abs(P) + c * c) * 10.0;
    RootReport rep{CharKind::AtKappaProfileC, {}, certified_lower(g, window), 0.0};
    rep.roots = roots_in_window(g, rep.z_lo, 0.0);
    std::erase_if(rep.roots, [](const RealRoot& r) { return r.z >= 0.0; });
    return rep;
}

namespace {

// min over z > 0 of z^2 - c z - 1 + p e^{-z c tau}; the function is convex.
double zero_profile_minimum(const ModelParams& params, double c) {
    const double p = params.p(), k = c * params.tau();
    const ExpQuadratic g{1.0, -c, -1.0, p, k};
    const double z_hi = 0.5 * (c + p * k) + 1.0;
    const double zmin = numerics::solve_bracketed([&](double z) { return g.slope(z); },
                                                  {0.0, z_hi}, root_tol(0.0, z_hi));
    return g.value(zmin);
}

}  // namespace

bool has_positive_root_at_zero(const ModelParams& params, double c) {
    if (!(c > 0.0)) throw DomainError("has_positive_root_at_zero: c must be positive");
    return zero_profile_minimum(params, c) <= 0.0;
}

double minimal_speed(const ModelParams& params) {
    auto m = [&](double c) { return zero_profile_minimum(params, c); };
    // m is strictly decreasing in c and m(0+) = p - 1 > 0.
    const double c_lo = 1e-9;
    return numerics::solve_expanding(m, c_lo, 1.0, 1e-13);
}

TailClass classify_tail(const ModelParams& params, double c) {
    return negative_roots_at_kappa(params, c).empty() ? TailClass::OscillatoryTail
                                                      : TailClass::EventuallyMonotone;
}

double linear_spreading_speed(const ModelParams& params, double beta) {
    if (!(beta > 0.0)) throw DomainError("linear_spreading_speed: beta must be positive");
    const double p = params.p(), tau = params.tau();
    auto G = [&](double c) { return beta * beta - c * beta - 1.0 + p * std::exp(-beta * c * tau); };
    return numerics::solve_expanding(G, 0.0, 1.0, 1e-12);
}

}  // namespace nwave::characteristic
