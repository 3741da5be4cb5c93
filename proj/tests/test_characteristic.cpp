#include <doctest.h>

#include <cmath>
#include <functional>

#include "nwave/characteristic.hpp"
#include "nwave/errors.hpp"
#include "nwave/numerics.hpp"

using namespace nwave;
using namespace nwave::characteristic;
using model::ModelParams;

namespace {

double bisect(const std::function<double(double)>& f, double a, double b, int iters = 200) {
    double fa = f(a);
    for (int i = 0; i < iters; ++i) {
        const double m = 0.5 * (a + b), fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Sign changes of g on a dense uniform grid; misses tangencies by design.
int sign_changes(const std::function<double(double)>& g, double lo, double hi, int n) {
    int count = 0;
    double prev = g(lo);
    for (int i = 1; i <= n; ++i) {
        const double v = g(lo + (hi - lo) * i / n);
        if ((v < 0) != (prev < 0)) ++count;
        prev = v;
    }
    return count;
}

}  // namespace

TEST_CASE("exp-quadratic derivatives") {
    const ExpQuadratic g{0.3, -1.1, 0.4, -2.0, 0.7};
    for (double z : {-3.0, -0.5, 0.0, 1.2, 4.0}) {
        const double h = 1e-6;
        CHECK(g.slope(z) == doctest::Approx((g.value(z + h) - g.value(z - h)) / (2 * h)).epsilon(1e-7));
        CHECK(g.curvature(z) == doctest::Approx((g.slope(z + h) - g.slope(z - h)) / (2 * h)).epsilon(1e-7));
    }
    const auto zi = g.inflection();
    REQUIRE(zi.has_value());
    CHECK(std::abs(g.curvature(*zi)) < 1e-12);
    CHECK_FALSE((ExpQuadratic{1.0, 0.0, 0.0, 1.0, 1.0}).inflection().has_value());
}

TEST_CASE("root isolation on polynomial cases") {
    const auto r = roots_in_window(ExpQuadratic{1.0, -3.0, 2.0, 0.0, 0.0}, -10.0, 10.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0].z == doctest::Approx(1.0));
    CHECK(r[1].z == doctest::Approx(2.0));
    const auto d = roots_in_window(ExpQuadratic{1.0, -2.0, 1.0, 0.0, 0.0}, -10.0, 10.0);
    REQUIRE(d.size() == 1);
    CHECK(d[0].z == doctest::Approx(1.0));
    CHECK(d[0].multiplicity == 2);
    CHECK(roots_in_window(ExpQuadratic{1.0, 0.0, 1.0, 0.0, 0.0}, -10.0, 10.0).empty());
}

TEST_CASE("every reported root is a root, none are missed") {
    for (double p : {1.5, 5.0, 40.0, 365.0})
        for (double tau : {0.01, 0.07, 0.5, 2.0})
            for (double c : {0.5, 3.0, 10.0, 60.0}) {
                const ModelParams m(p, tau);
                for (auto kind : {CharKind::AtZeroDDE, CharKind::AtKappaDDE, CharKind::AtKappaProfileC,
                                  CharKind::AtZeroProfile}) {
                    const double speed = kind == CharKind::AtZeroProfile ? 1.0 / (c * c) : c;
                    const auto g = characteristic::characteristic(kind, m, speed);
                    const auto rep = real_roots(kind, m, speed);
                    for (const auto& root : rep.roots)
                        CHECK(std::abs(g.value(root.z)) <= 1e-8 * (1 + std::abs(g.d) + root.z * root.z));
                    const int simple = sign_changes([&](double z) { return g.value(z); }, rep.z_lo,
                                                    rep.z_hi, 200000);
                    int odd = 0;
                    for (const auto& root : rep.roots) odd += root.multiplicity % 2;
                    CHECK(odd == simple);
                }
            }
}

TEST_CASE("mu against an independent bisection") {
    for (double p : {1.2, 3.0, 365.0, 1e4})
        for (double tau : {0.0, 0.01, 0.07, 1.0}) {
            const ModelParams m(p, tau);
            const double ref = bisect([&](double z) { return z + 1 - p * std::exp(-z * tau); }, 0.0, p);
            CHECK(std::abs(mu_root(m) - ref) <= 1e-14 * p + 1e-15);
        }
    // tau = 0: mu = p - 1
    CHECK(mu_root(ModelParams(5.0, 0.0)) == doctest::Approx(4.0));
    CHECK(mu_root(ModelParams(365.0, 0.07)) == doctest::Approx(33.64).epsilon(0.01 / 33.64));
}

TEST_CASE("profile characteristic scaling between the two speed forms") {
    const ModelParams m(365.0, 0.07);
    for (double c : {0.7, 5.0, 48.0})
        for (double z : {-2.0, -0.3, 0.4, 1.5}) {
            const double lhs = char_value(CharKind::AtKappaProfileC, z, m, c);
            const double rhs = char_value(CharKind::AtKappaProfileEps, c * z, m, 1.0 / (c * c));
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        }
    CHECK_THROWS_AS(char_value(CharKind::AtKappaProfileC, 0.0, m), DomainError);
}

TEST_CASE("minimal speed") {
    for (double p : {2.0, 5.0, 10.0})
        CHECK(minimal_speed(ModelParams(p, 0.0)) == doctest::Approx(2 * std::sqrt(p - 1)).epsilon(1e-9));

    // Oracle: c* = min over beta > 0 of the speed with decay rate beta.
    for (double tau : {0.02, 0.07, 0.5}) {
        const ModelParams m(365.0, tau);
        auto c_of_beta = [&](double beta) {
            return bisect([&](double c) { return beta * beta - c * beta - 1 + 365.0 * std::exp(-beta * c * tau); },
                          0.0, 1e4);
        };
        double best = INFINITY;
        for (double b : numerics::logspace(1e-3, 50.0, 20000)) best = std::min(best, c_of_beta(b));
        CHECK(minimal_speed(m) == doctest::Approx(best).epsilon(1e-6));
        const double cs = minimal_speed(m);
        CHECK(has_positive_root_at_zero(m, cs * (1 + 1e-6)));
        CHECK_FALSE(has_positive_root_at_zero(m, cs * (1 - 1e-6)));
        CHECK(linear_spreading_speed(m, 1.0) >= cs);
    }
    CHECK(minimal_speed(ModelParams(365.0, 0.07)) == doctest::Approx(7.89).epsilon(0.01 / 7.89));
}

TEST_CASE("negative roots at kappa and tail class") {
    const ModelParams m(365.0, 0.07);
    for (double c : numerics::logspace(0.5, 500.0, 40)) {
        const auto rep = negative_roots_at_kappa(m, c);
        const auto g = characteristic::characteristic(CharKind::AtKappaProfileC, m, c);
        for (const auto& r : rep.roots) {
            CHECK(r.z < 0.0);
            CHECK(std::abs(g.value(r.z)) < 1e-8 * (1 + r.z * r.z + m.P()));
        }
        // brute force on a generous window; negative roots come in pairs since g(0) < 0
        // and g -> -inf on the left, and the leftmost can sit far out
        const double lo = 1e8;
        const int n = sign_changes([&](double s) { return g.value(-std::exp(s)); }, std::log(lo),
                                   std::log(1e-6), 400000);
        int odd = 0;
        for (const auto& r : rep.roots) odd += r.multiplicity % 2;
        CHECK(odd == n);
        CHECK((classify_tail(m, c) == TailClass::EventuallyMonotone) == !rep.empty());
    }
    // with no delay the roots are real: z = (c - sqrt(c^2 + 4(1+P)))/2 < 0 for the -P sign
    const auto rep0 = negative_roots_at_kappa(ModelParams(365.0, 0.0), 3.0);
    REQUIRE(rep0.roots.size() == 1);
    const double P = std::log(365.0) - 1;
    CHECK(rep0.roots[0].z == doctest::Approx((3.0 - std::sqrt(9.0 + 4 * (1 + P))) / 2));
    CHECK_THROWS_AS(negative_roots_at_kappa(m, 0.0), DomainError);
}
