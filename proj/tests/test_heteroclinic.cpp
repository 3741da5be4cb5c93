#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nwave/errors.hpp"
#include "nwave/heteroclinic.hpp"
#include "nwave/numerics.hpp"

using namespace nwave;
using namespace nwave::heteroclinic;
using model::ModelParams;

TEST_CASE("crossings of a synthetic trajectory") {
    const double h = 0.01;
    std::vector<double> u, du;
    for (int i = 0; i <= 1000; ++i) {
        u.push_back(std::sin(i * h));
        du.push_back(std::cos(i * h));
    }
    const Trajectory tr(0.0, h, u, du);
    CHECK(tr.t_end() == doctest::Approx(10.0));
    CHECK(tr.at(1.234) == doctest::Approx(std::sin(1.234)).epsilon(1e-9));
    CHECK(tr.derivative_at(1.234) == doctest::Approx(std::cos(1.234)).epsilon(1e-7));
    CHECK_THROWS_AS(tr.at(10.5), DomainError);

    const auto cs = find_crossings(tr, 0.5);
    // sin t = 0.5 at pi/6, 5pi/6, 13pi/6, 17pi/6
    REQUIRE(cs.size() == 4);
    CHECK(cs[0].t == doctest::Approx(std::numbers::pi / 6).epsilon(1e-9));
    CHECK(cs[0].slope_sign == 1);
    CHECK(cs[1].t == doctest::Approx(5 * std::numbers::pi / 6).epsilon(1e-9));
    CHECK(cs[1].slope_sign == -1);
}

TEST_CASE("sign change count") {
    CHECK(sign_change_count(std::vector<double>{1.0, -1.0, 0.0, 2.0}) == 2);
    CHECK(sign_change_count(std::vector<double>{0.0, 0.0}) == 0);
    CHECK(sign_change_count(std::vector<double>{-1.0, -2.0, -3.0}) == 0);
}

TEST_CASE("reference run p = 365, tau = 0.07") {
    const ModelParams m(365.0, 0.07);
    const auto ex = dirichlet::DirichletExpansion::build(m);
    const auto tr = integrate(ex, default_t_end(ex));
    CHECK(tr.t_end() >= 10.0);
    // history comes from the series
    for (std::size_t i = 0; i <= static_cast<std::size_t>(tr.K); ++i)
        CHECK(tr.u()[i] == doctest::Approx(ex.evaluate(tr.t(i)).value).epsilon(1e-14));
    const auto rep = crossings(tr, m);
    CHECK(rep.crossings.size() >= 1);
    CHECK(rep.crossings.front().slope_sign == 1);
    for (double g : rep.gaps) CHECK(g > m.tau());
    CHECK(rep.anomalies.empty());
    CHECK(rep.tail == TailClass::MonotoneTail);
    CHECK(rep.global_max > m.kappa());
    // frozen from this implementation (K = 64)
    CHECK(rep.global_max == doctest::Approx(10.621371).epsilon(1e-6));
    CHECK(rep.global_max_t == doctest::Approx(0.12901).epsilon(1e-4));
    CHECK(std::abs(tr.u().back() - m.kappa()) < 1e-6);
}

TEST_CASE("fourth-order convergence of the integrator") {
    const ModelParams m(365.0, 0.07);
    const auto ex = dirichlet::DirichletExpansion::build(m);
    const double t = ex.handoff_time() + 4 * m.tau();
    const double te = t + m.tau();
    const double a = integrate(ex, te, 32).at(t);
    const double b = integrate(ex, te, 64).at(t);
    const double c = integrate(ex, te, 128).at(t);
    const double ratio = (a - b) / (b - c);
    CHECK(std::abs(ratio - 16.0) <= 4.0);
}

TEST_CASE("oscillating tail iff the linearisation at kappa has no real root") {
    for (double p : {20.0, 50.0, 365.0})
        for (double tau : {0.05, 0.1, 0.2, 0.4, 0.8}) {
            const ModelParams m(p, tau);
            const double P = m.P();
            const double margin = P * tau * std::exp(1 + tau);
            if (std::abs(margin - 1.0) < 0.05) continue;  // too slow to settle either way
            const auto ex = dirichlet::DirichletExpansion::build(m);
            const auto tr = integrate(ex, default_t_end(ex));
            const auto rep = crossings(tr, m);
            CHECK_MESSAGE((rep.tail == TailClass::Oscillating) == (margin > 1.0), "p=" << p << " tau=" << tau);
            for (double g : rep.gaps) CHECK(g > tau);
        }
}

TEST_CASE("monotone regimes: p <= e, or p tau e^{tau-1} <= 1") {
    const std::vector<std::pair<double, double>> cases{{2.0, 0.1}, {2.0, 1.0}, {2.5, 3.0},
                                                       {20.0, 0.1}, {365.0, 0.005}};
    for (auto [p, tau] : cases) {
        const ModelParams m(p, tau);
        const auto ex = dirichlet::DirichletExpansion::build(m);
        const auto tr = integrate(ex, default_t_end(ex));
        const auto rep = crossings(tr, m);
        CHECK_MESSAGE(rep.crossings.empty(), "p=" << p << " tau=" << tau);
        CHECK_FALSE(rep.first_max_t.has_value());
        CHECK(rep.tail == TailClass::MonotoneTail);
        for (std::size_t i = 1; i < tr.size(); ++i) CHECK(tr.u()[i] >= tr.u()[i - 1] - 1e-12);
    }
}

TEST_CASE("region verdicts") {
    const auto a = theorem1_verdict(ModelParams(365.0, 0.07));
    CHECK(a.verdict);
    CHECK(a.in_J);
    CHECK(a.zeta_gt_lnp);
    CHECK(a.J_upper == doctest::Approx(std::exp(1 + std::exp(-1.07) / 0.07)));

    const auto b = theorem1_verdict(ModelParams(365.0, 0.073));
    CHECK_FALSE(b.in_J);
    CHECK_FALSE(b.verdict);
    CHECK(b.J_upper == doctest::Approx(294.32).epsilon(1e-4));

    const auto c = theorem1_verdict_with_run(ModelParams(365.0, 0.07));
    REQUIRE(c.max_u.has_value());
    CHECK(*c.max_u > std::log(365.0));
    CHECK_THROWS_AS(theorem1_verdict(ModelParams(365.0, 0.0)), DomainError);
}

TEST_CASE("argument checks") {
    const auto ex = dirichlet::DirichletExpansion::build(ModelParams(365.0, 0.07));
    CHECK_THROWS_AS(integrate(ex, 5.0, 10), DomainError);
    CHECK_THROWS_AS(integrate(ex, ex.handoff_time() - 1.0), DomainError);
}
