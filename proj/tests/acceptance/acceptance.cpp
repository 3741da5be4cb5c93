// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "nwave/atlas.hpp"
#include "nwave/characteristic.hpp"
#include "nwave/dirichlet.hpp"
#include "nwave/front.hpp"
#include "nwave/heteroclinic.hpp"
#include "nwave/model.hpp"
#include "nwave/numerics.hpp"
#include "nwave/pde.hpp"

using namespace nwave;
using model::ModelParams;

namespace {

const ModelParams ref(365.0, 0.07);

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[failed: " << what << "] ";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return seconds_since(t0);
}

void ac1(Outcome& o) {
    double mu = 0;
    const double t = timed([&] { mu = characteristic::mu_root(ref); });
    o.detail << "mu=" << mu << " time=" << t * 1e3 << "ms ";
    o.require(std::abs(mu - 33.64) <= 0.01, "mu = 33.64 +- 0.01");
    o.require(t < 1e-3, "runtime < 1 ms");
}

void ac2(Outcome& o) {
    const double mu = characteristic::mu_root(ref);
    const auto q = dirichlet::coefficients(ref, mu, 40);
    const double p = ref.p(), tau = ref.tau();
    auto chi = [&](double z) { return z + 1 - p * std::exp(-z * tau); };
    const double q2 = -p * std::exp(-2 * mu * tau) / chi(2 * mu);
    const double q3 = p * (0.5 - 2 * q2) * std::exp(-3 * mu * tau) / chi(3 * mu);
    o.detail << "qbar2=" << q[1] << " |dq2|=" << std::abs(q[1] - q2) << " |dq3|=" << std::abs(q[2] - q3) << " ";
    o.require(q[1] >= -0.055 && q[1] <= -0.045, "qbar2 in [-0.055, -0.045]");
    o.require(std::abs(q[1] - q2) <= 1e-12, "qbar2 closed form to 1e-12");
    o.require(std::abs(q[2] - q3) <= 1e-12, "qbar3 closed form to 1e-12");
}

void ac3(Outcome& o) {
    const double z = dirichlet::zeta(ref), zq = dirichlet::zeta_quadrature(ref);
    o.detail << "zeta=" << z << " quad=" << zq << " lnp=" << ref.kappa() << " ";
    o.require(std::abs(z - 6.46) <= 0.01, "zeta = 6.46 +- 0.01");
    o.require(z > ref.kappa(), "zeta > ln 365");
    o.require(std::abs(z - zq) <= 1e-10, "closed form vs quadrature to 1e-10");
}

void ac4(Outcome& o) {
    const auto ex = dirichlet::DirichletExpansion::build(ref);
    const double em = ex.eps_max();
    o.detail << "e^{mu tau}-1=" << em << " ";
    o.require(std::abs(em - 9.536) <= 0.01, "e^{mu tau} - 1 = 9.536 +- 0.01");
    o.require(2.2 < em, "eps = 2.2 admissible");
    const double T = ex.horizon_at(2.2);
    o.detail << "T(2.2)=" << T << " ";
    o.require(std::abs(T - 0.079) <= 0.001, "horizon = 0.079 +- 0.001");
}

void ac5(Outcome& o) {
    const double c = characteristic::minimal_speed(ref);
    o.detail << "c*=" << c << " ";
    o.require(std::abs(c - 7.89) <= 0.01, "c* = 7.89 +- 0.01");
    for (double p : {2.0, 5.0, 10.0}) {
        const double c0 = characteristic::minimal_speed(ModelParams(p, 0.0));
        const double exact = 2 * std::sqrt(p - 1);
        o.detail << "|c0-2sqrt(p-1)|(" << p << ")=" << std::abs(c0 - exact) << " ";
        o.require(std::abs(c0 - exact) <= 1e-9, "tau = 0 speed to 1e-9");
    }
}

void ac6(Outcome& o) {
    const double ts = atlas::tau_star();
    const auto nm = atlas::nm_necessary(ref);
    o.detail << "tau*=" << ts << " residual=" << ts * std::exp(1 + ts) - 1 << " P tau e^{1+tau}=" << nm.upper_value
             << " ";
    o.require(std::abs(ts - 0.278) <= 0.001, "tau* = 0.278 +- 0.001");
    o.require(std::abs(ts * std::exp(1 + ts) - 1) < 1e-12, "tau* solves tau e^{1+tau} = 1");
    o.require(nm.holds, "nm_necessary true");
    o.require(nm.upper_value < 1.0, "P tau e^{1+tau} < 1");
}

void ac7(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ex = dirichlet::DirichletExpansion::build(ref);
    const auto tr = heteroclinic::integrate(ex, heteroclinic::default_t_end(ex));
    const auto rep = heteroclinic::crossings(tr, ref);
    const double t_run = seconds_since(t0);
    const double zeta = dirichlet::zeta(ref);
    o.detail << "max=" << rep.global_max << " crossings=" << rep.crossings.size() << " tail="
             << heteroclinic::to_string(rep.tail) << " time=" << t_run << "s ";
    o.require(rep.global_max > zeta, "u* exceeds zeta");
    o.require(!rep.crossings.empty(), "at least one kappa crossing");
    for (double g : rep.gaps) o.require(g > ref.tau(), "crossing gaps > tau");
    o.require(rep.anomalies.empty(), "no crossing anomalies");
    o.require(rep.tail == heteroclinic::TailClass::MonotoneTail, "MonotoneTail");
    o.require(t_run < 1.0, "runtime < 1 s");

    bool bounds = true;
    const double top = std::min(0.0, ex.handoff_time());
    for (double t : numerics::linspace(top - 10.0 / ex.mu(), top, 201)) {
        const double u = ex.evaluate(t).value;
        bounds = bounds && ex.u2(t) < u && u < ex.u1(t);
    }
    o.require(bounds, "u2 < u* < u1 on the t <= 0 grid");

    const double t = ex.handoff_time() + 4 * ref.tau();
    const double a = heteroclinic::integrate(ex, t + ref.tau(), 32).at(t);
    const double b = heteroclinic::integrate(ex, t + ref.tau(), 64).at(t);
    const double c = heteroclinic::integrate(ex, t + ref.tau(), 128).at(t);
    const double ratio = (a - b) / (b - c);
    o.detail << "richardson=" << ratio << " ";
    o.require(std::abs(ratio - 16.0) <= 4.0, "Richardson ratio 16 +- 4 (fourth order)");
}

void ac8(Outcome& o) {
    const std::vector<double> Ps{1.1, 2.0, 4.8999, 10.0};
    atlas::InclusionReport rep;
    const double t = timed([&] {
        rep = atlas::verify_inclusion(Ps, numerics::logspace(1e-2, 1e3, 200), numerics::logspace(1e-2, 10.0, 300),
                                      numerics::logspace(1e-2, 1e3, 300));
    });
    o.detail << "curve_points=" << rep.curve_points << " min_gap=" << rep.min_gap
             << " ineq_points=" << rep.ineq22_points << " worst_margin=" << rep.ineq22_worst.margin
             << " time=" << t << "s ";
    o.require(rep.curve_points == 800, "4 x 200 curve samples");
    o.require(rep.violations.empty() && rep.min_gap > 0.0, "T(c) < tau(c)");
    o.require(rep.ineq22_points == 90000, "300 x 300 inequality grid");
    o.require(rep.ineq22_violations.empty() && rep.ineq22_worst.margin > 0.0, "inequality margin > 0");
    o.require(rep.ck_coefficients_ok && rep.ck_discriminant_ok && rep.ck_A_positive, "coefficient checks");
    for (double P : Ps) {
        o.require(std::abs(atlas::tau_of_c(P, 1e3) - std::log(P / (P - 1))) < 1e-3, "tau(c) -> ln(P/(P-1))");
        o.require(std::abs(atlas::T_of_c(P, 1e3) - atlas::T_star(P)) < 1e-3, "T(c) -> T*");
    }
    o.require(t < 10.0, "runtime < 10 s");
}

void ac9(Outcome& o) {
    int checked = 0, banded = 0, disagree = 0;
    for (double tau : numerics::linspace(0.001, 0.3, 50))
        for (double c : numerics::logspace(0.5, 500.0, 50)) {
            const auto m = atlas::membership(ModelParams(365.0, tau), c);
            if (m.near_boundary) {
                ++banded;
                continue;
            }
            ++checked;
            if (m.Dm_by_roots != m.Dm_by_boundary) ++disagree;
        }
    o.detail << "checked=" << checked << " in_band=" << banded << " disagreements=" << disagree << " ";
    o.require(checked + banded == 2500, "50 x 50 grid");
    o.require(disagree == 0, "root search agrees with tau <= T(c)");
}

void ac10(Outcome& o) {
    const double lss = characteristic::linear_spreading_speed(ref, 0.7);
    o.detail << "lss(0.7)=" << lss << " ";
    o.require(std::abs(lss - 48.26) <= 0.05, "linear spreading speed 48.26 +- 0.05");

    const auto cfg = pde::preset("fig4");
    pde::SpacetimeRecord rec;
    const double t = timed([&] { rec = pde::simulate(cfg); });
    const auto d = front::diagnose(rec);
    o.detail << "speed=" << d.speed.speed << " shape=" << front::to_string(d.stats.shape)
             << " overshoot=" << d.stats.overshoot << " time=" << t << "s ";
    o.require(d.speed.speed >= 46.0 && d.speed.speed <= 54.0, "speed in [46, 54]");
    o.require(std::abs(d.speed.speed - lss) <= 0.05 * lss, "within 5% of lss");
    o.require(d.stats.shape == front::Shape::NonMonotoneNonOscillating, "NonMonotoneNonOscillating");
    o.require(d.stats.overshoot >= 0.5, "overshoot >= 0.5");
    o.require(t < 60.0, "runtime < 60 s");

    auto smoke = cfg;
    smoke.x_lo = -60;
    smoke.x_hi = 60;
    smoke.dx = 0.2;
    smoke.t_end = 1.0;
    smoke.snapshot_times = {0.0, 0.5, 1.0};
    pde::SpacetimeRecord srec;
    const double ts = timed([&] { srec = pde::simulate(smoke); });
    const auto sd = front::diagnose(srec);
    o.detail << "smoke_speed=" << sd.speed.speed << " smoke_time=" << ts << "s ";
    o.require(std::abs(sd.speed.speed - lss) <= 0.15 * lss, "smoke speed within 15%");
    o.require(ts < 5.0, "smoke runtime < 5 s");
}

void ac11(Outcome& o) {
    auto cfg = pde::preset("fig3");
    cfg.x_lo = -200;
    cfg.x_hi = 200;
    cfg.dx = 0.25;
    cfg.t_end = 5.0;
    pde::SpacetimeRecord rec;
    const double t = timed([&] { rec = pde::simulate(cfg); });
    const auto d = front::diagnose(rec);
    const double cs = characteristic::minimal_speed(ref);
    o.detail << "speed=" << d.speed.speed << " c*=" << cs << " rel=" << (d.speed.speed - cs) / cs << " time=" << t
             << "s ";
    o.require(std::abs(d.speed.speed - cs) <= 0.10 * cs, "within 10% of c*");
    o.require(t < 60.0, "runtime < 60 s");
}

double pde_order(pde::Scheme scheme, const std::vector<std::pair<double, double>>& grids) {
    std::vector<pde::SpacetimeRecord> runs;
    for (auto [dx, dt] : grids) {
        pde::SimConfig c;
        c.params = ModelParams(5.0, 0.5);
        c.x_lo = -20;
        c.x_hi = 20;
        c.dx = dx;
        c.dt = dt;
        c.t_end = 1.0;
        c.scheme = scheme;
        c.ic = pde::TanhIC{c.params.kappa(), 2.0, 0.0};
        c.u_lo = pde::initial_value(c.ic, c.x_lo);
        c.u_hi = pde::initial_value(c.ic, c.x_hi);
        runs.push_back(pde::simulate(c));
    }
    auto diff = [](const pde::SpacetimeRecord& a, const pde::SpacetimeRecord& b) {
        const std::size_t stride = (b.x.size() - 1) / (a.x.size() - 1);
        double m = 0.0;
        for (std::size_t i = 0; i < a.x.size(); ++i) m = std::max(m, std::abs(a.final_u[i] - b.final_u[i * stride]));
        return m;
    };
    return std::log2(diff(runs[0], runs[1]) / diff(runs[1], runs[2]));
}

void ac12(Outcome& o) {
    bool schwarz = true;
    for (double p : numerics::logspace(1.01, 1e6, 40)) {
        const ModelParams m(p, 0.0);
        for (double u : numerics::linspace(0.01, 30.0, 3001))
            if (std::abs(u - 1.0) > 1e-9) schwarz = schwarz && model::schwarz(u, m) < 0.0;
    }
    o.require(schwarz, "Schwarz derivative < 0");

    const bool f16 = model::feedback_holds(ModelParams(16.0, 0.0));
    const bool f18 = model::feedback_holds(ModelParams(18.0, 0.0));
    const double thr = numerics::solve_bracketed(
        [](double p) { return model::feedback_holds(ModelParams(p, 0.0)) ? -1.0 : 1.0; }, {16.0, 18.0}, 1e-9);
    o.detail << "feedback threshold=" << thr << " ";
    o.require(f16 && !f18, "feedback flips between 16 and 18");
    o.require(std::abs(thr - 16.999) < 1e-3, "threshold near 16.999");

    bool equilibria = true;
    for (auto scheme : {pde::Scheme::CrankNicolson, pde::Scheme::MethodOfLines}) {
        pde::SimConfig c;
        c.params = ref;
        c.x_lo = -10;
        c.x_hi = 10;
        c.dx = 0.25;
        c.dt = 0.07 / 3;
        c.t_end = 0.7;
        c.scheme = scheme;
        const double k = ref.kappa();
        c.ic = pde::UniformIC{k};
        c.u_lo = c.u_hi = k;
        for (double v : pde::simulate(c).final_u) equilibria = equilibria && std::abs(v - k) <= 1e-12 * k;
        c.ic = pde::UniformIC{0.0};
        c.u_lo = c.u_hi = 0.0;
        for (double v : pde::simulate(c).final_u) equilibria = equilibria && v == 0.0;
    }
    o.require(equilibria, "equilibria preserved");

    const double cn = pde_order(pde::Scheme::CrankNicolson, {{0.2, 0.05}, {0.1, 0.025}, {0.05, 0.0125}});
    const double mol = pde_order(pde::Scheme::MethodOfLines, {{0.2, 0.015625}, {0.1, 0.00390625}, {0.05, 0.0009765625}});
    o.detail << "order cn=" << cn << " mol=" << mol << " ";
    o.require(std::abs(cn - 2.0) <= 0.3, "CN order 2 +- 0.3");
    o.require(std::abs(mol - 2.0) <= 0.3, "MOL order 2 +- 0.3");

    bool phi = true;
    for (double c : numerics::logspace(0.01, 1e3, 60)) {
        const auto fr = atlas::SpeedFrame::make(c);
        double prev = atlas::Phi(0.0, fr);
        for (double tau : numerics::logspace(1e-4, 20.0, 300)) {
            const double v = atlas::Phi(tau, fr);
            phi = phi && v < prev;
            prev = v;
        }
    }
    o.require(phi, "Phi decreasing in tau");

    bool alt = true;
    const auto q = dirichlet::coefficients(ref, characteristic::mu_root(ref), 20);
    for (int n = 1; n <= 20; ++n) alt = alt && ((n % 2 == 1) ? q[n - 1] > 0 : q[n - 1] < 0);
    o.require(alt, "qbar_n alternate in sign for n <= 20");
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
        {"AC1  mu", ac1},
        {"AC2  qbar2 and closed forms", ac2},
        {"AC3  zeta", ac3},
        {"AC4  series horizon", ac4},
        {"AC5  minimal speed", ac5},
        {"AC6  tau* and necessary conditions", ac6},
        {"AC7  heteroclinic run", ac7},
        {"AC8  appendix sweep", ac8},
        {"AC9  D_m consistency", ac9},
        {"AC10 fig4 simulation", ac10},
        {"AC11 fig3 simulation", ac11},
        {"AC12 property suites", ac12},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "[exception: " << e.what() << "]";
        }
        if (!o.pass) ++failed;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
