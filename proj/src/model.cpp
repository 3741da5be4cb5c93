#include "nwave/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nwave/errors.hpp"

namespace nwave::model {

ModelParams::ModelParams(double p, double tau) : p_(p), tau_(tau), kappa_(std::log(p)) {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("model: p must be finite and > 1");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("model: tau must be finite and >= 0");
}

double ModelParams::f_max() const { return p_ / std::numbers::e; }

double birth(double u, int order, const ModelParams& params) {
    const double pe = params.p() * std::exp(-u);
    switch (order) {
        case 0: return pe * u;
        case 1: return pe * (1.0 - u);
        case 2: return pe * (u - 2.0);
        case 3: return pe * (3.0 - u);
        default: throw DomainError("birth: derivative order must be 0..3");
    }
}

double schwarz(double u, const ModelParams& params) {
    if (!(u > 0.0)) throw DomainError("schwarz: u must be positive");
    if (std::abs(u - 1.0) < 1e-12) throw DomainError("schwarz: singular at the critical point u = 1");
    const double d1 = birth(u, 1, params);
    const double r2 = birth(u, 2, params) / d1;
    return birth(u, 3, params) / d1 - 1.5 * r2 * r2;
}

bool feedback_holds(const ModelParams& params) {
    const double kappa = params.kappa();
    const double hi = birth(ModelParams::x_max(), 0, params);
    const double lo = birth(hi, 0, params);
    if (!(lo < hi)) return true;  // empty interval

    auto violates = [&](double x) {
        if (x == kappa) return false;
        return (birth(x, 0, params) - kappa) * (x - kappa) >= 0.0;
    };

    constexpr int grid = 10000;
    bool grid_ok = true;
    for (int i = 0; i < grid && grid_ok; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / grid;
        if (violates(x)) grid_ok = false;
    }

    // f is unimodal with its peak at 1: on any interval the infimum sits at an
    // endpoint and the supremum is f(1) when 1 is interior. Endpoints equal to
    // kappa are skipped (f(kappa) = kappa exactly, up to rounding).
    auto f = [&](double x) { return birth(x, 0, params); };
    bool pieces_ok = true;
    if (lo < kappa) {  // need f > kappa on (lo, min(kappa, hi))
        const double b = std::min(kappa, hi);
        if (f(lo) < kappa) pieces_ok = false;
        if (b != kappa && f(b) < kappa) pieces_ok = false;
    }
    if (kappa < hi) {  // need f < kappa on (max(kappa, lo), hi)
        const double a = std::max(kappa, lo);
        if (a < 1.0 && hi > 1.0) {
            if (f(1.0) >= kappa) pieces_ok = false;
        } else {
            if (a != kappa && f(a) > kappa) pieces_ok = false;
            if (f(hi) > kappa) pieces_ok = false;
        }
    }
    return grid_ok && pieces_ok;
}

bool gsc_holds(const ModelParams& params) {
    const double e2 = std::exp(2.0);
    if (params.p() <= e2) return true;
    const double P = params.P();
    return std::exp(-params.tau()) > P * std::log((P * P + P) / (P * P + 1.0));
}

}  // namespace nwave::model
