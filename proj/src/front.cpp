#include "nwave/front.hpp"

#include <algorithm>
#include <cmath>

#include "nwave/errors.hpp"
#include "nwave/numerics.hpp"
#include "nwave/pde.hpp"

namespace nwave::front {

namespace {

int sgn(double x) { return (x > 0) - (x < 0); }

}  // namespace

double front_position(std::span<const double> x, std::span<const double> u, double level) {
    if (x.size() != u.size()) throw DomainError("front_position: size mismatch");
    for (std::size_t i = 1; i < u.size(); ++i) {
        const double a = u[i - 1] - level, b = u[i] - level;
        if (a == 0.0) return x[i - 1];
        if (sgn(a) * sgn(b) < 0) return x[i - 1] + a / (a - b) * (x[i] - x[i - 1]);
    }
    if (!u.empty() && u.back() == level) return x.back();
    throw NoCrossing("profile never crosses the tracking level");
}

SpeedEstimate estimate_speed(std::span<const double> t, std::span<const double> X) {
    if (t.size() != X.size()) throw DomainError("estimate_speed: size mismatch");
    if (t.empty()) throw InsufficientPoints("estimate_speed: empty front track");
    const double cut = t.front() + 0.5 * (t.back() - t.front());
    std::vector<double> tw, xw;
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i] >= cut) {
            tw.push_back(t[i]);
            xw.push_back(X[i]);
        }
    if (tw.size() < 5)
        throw InsufficientPoints("estimate_speed: need at least 5 positions in the fitting window");
    const auto fit = numerics::linear_fit(tw, xw);
    SpeedEstimate s;
    s.speed = std::abs(fit.slope);
    s.stderr_ = fit.slope_stderr;
    s.direction = fit.slope < 0 ? -1 : 1;
    s.points = tw.size();
    return s;
}

std::string_view to_string(Shape s) {
    switch (s) {
        case Shape::Monotone: return "monotone";
        case Shape::NonMonotoneNonOscillating: return "nm";
        case Shape::Oscillating: return "oscillating";
        case Shape::Inconclusive: return "inconclusive";
    }
    return "?";
}

ProfileStats classify_profile(std::span<const double> xi_in, std::span<const double> u_in,
                              const ModelParams& params, double delay_length) {
    if (xi_in.size() != u_in.size()) throw DomainError("classify_profile: size mismatch");
    if (u_in.size() < 4) throw InsufficientPoints("classify_profile: profile too short");
    std::vector<double> xi(xi_in.begin(), xi_in.end()), u(u_in.begin(), u_in.end());
    if (u.front() > u.back()) {
        std::reverse(u.begin(), u.end());
        std::reverse(xi.begin(), xi.end());
        for (double& v : xi) v = -v;
    }

    const double kappa = params.kappa();
    double scale = 0.0;
    for (double v : u) scale = std::max(scale, std::abs(v));
    const double tol = 1e-9 * std::max(scale, 1e-300);
    const std::size_t n = u.size();

    ProfileStats st;
    st.overshoot = *std::max_element(u.begin(), u.end()) - kappa;

    // Crossings of kappa, ignoring samples within tol of the level.
    std::size_t last = 0;
    int last_side = 0;
    std::size_t first_cross_index = n;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = u[i] - kappa;
        const int s = std::abs(d) <= tol ? 0 : sgn(d);
        if (s == 0) continue;
        if (last_side != 0 && s != last_side) {
            std::size_t j = last;
            while (j + 1 < i && sgn(u[j + 1] - kappa) == last_side) ++j;
            const double a = u[j] - kappa, b = u[j + 1] - kappa;
            const double w = (a - b) != 0.0 ? a / (a - b) : 0.5;
            st.crossing_xi.push_back(xi[j] + w * (xi[j + 1] - xi[j]));
            if (first_cross_index == n) first_cross_index = j + 1;
        }
        last = i;
        last_side = s;
    }
    st.kappa_crossings = static_cast<int>(st.crossing_xi.size());
    for (std::size_t j = 1; j < st.crossing_xi.size(); ++j)
        if (!(st.crossing_xi[j] - st.crossing_xi[j - 1] > delay_length)) st.gaps_ok = false;

    bool increasing = true;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (u[i + 1] - u[i] < -tol) increasing = false;

    st.leading_edge_increasing = true;
    for (std::size_t i = 0; i + 1 < std::min(first_cross_index, n); ++i)
        if (u[i + 1] - u[i] < -tol) st.leading_edge_increasing = false;

    const double tail_start = xi.front() + 0.75 * (xi.back() - xi.front());
    bool up = true, down = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (xi[i] < tail_start) continue;
        const double d = u[i + 1] - u[i];
        if (d < -tol) up = false;
        if (d > tol) down = false;
    }
    st.tail_monotone = up || down;
    const auto late_crossings = std::count_if(st.crossing_xi.begin(), st.crossing_xi.end(),
                                              [&](double x) { return x >= tail_start; });

    if (increasing) {
        st.shape = Shape::Monotone;
    } else if (late_crossings >= 2) {
        st.shape = Shape::Oscillating;
    } else if (st.overshoot > tol && st.tail_monotone && st.kappa_crossings >= 1 && st.gaps_ok) {
        st.shape = Shape::NonMonotoneNonOscillating;
    } else {
        st.shape = Shape::Inconclusive;
    }
    return st;
}

FrontDiagnostics diagnose(const pde::SpacetimeRecord& record) {
    FrontDiagnostics d;
    d.level = record.config.level();
    std::vector<double> t, X;
    for (const auto& s : record.front) {
        t.push_back(s.t);
        X.push_back(s.X);
    }
    d.speed = estimate_speed(t, X);
    d.t = record.final_t;
    const double X_end = front_position(record.x, record.final_u, d.level);
    d.xi.reserve(record.x.size());
    for (double x : record.x) d.xi.push_back(x - X_end);
    d.u = record.final_u;
    const auto& params = record.config.params;
    d.stats = classify_profile(d.xi, d.u, params, params.tau() * d.speed.speed);
    return d;
}

}  // namespace nwave::front
