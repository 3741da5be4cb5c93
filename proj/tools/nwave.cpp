// nwave: command-line front end for the blowflies wavefront toolkit.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nwave/atlas.hpp"
#include "nwave/characteristic.hpp"
#include "nwave/dirichlet.hpp"
#include "nwave/errors.hpp"
#include "nwave/exec.hpp"
#include "nwave/front.hpp"
#include "nwave/heteroclinic.hpp"
#include "nwave/io.hpp"
#include "nwave/model.hpp"
#include "nwave/numerics.hpp"
#include "nwave/pde.hpp"
#include "nwave/version.hpp"

using namespace nwave;
using io::json;
namespace fs = std::filesystem;

namespace {

constexpr int exit_usage = 64;

struct Range {
    double lo = 0, hi = 0;
    std::size_t n = 0;
};

Range parse_range(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw CLI::ValidationError("range", "expected LO:HI:N, got '" + s + "'");
    Range r;
    try {
        r.lo = std::stod(parts[0]);
        r.hi = std::stod(parts[1]);
        r.n = static_cast<std::size_t>(std::stoul(parts[2]));
    } catch (const std::exception&) {
        throw CLI::ValidationError("range", "malformed range '" + s + "'");
    }
    if (r.n < 1 || !(r.hi >= r.lo)) throw CLI::ValidationError("range", "empty range '" + s + "'");
    return r;
}

std::vector<fs::path> split_outputs(const std::string& s, std::size_t expected, const char* what) {
    std::vector<fs::path> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.emplace_back(item);
    if (out.size() != expected) {
        std::ostringstream os;
        os << what << " expects " << expected << " comma-separated output paths";
        throw CLI::ValidationError("--out", os.str());
    }
    return out;
}

void emit(const json& j, const std::string& out) {
    if (out.empty() || out == "-")
        std::cout << j.dump(2) << '\n';
    else
        io::write_json(out, j);
}

std::string tail_word(const heteroclinic::CrossingReport& rep) {
    if (rep.tail == heteroclinic::TailClass::Oscillating) return "oscillating";
    return rep.crossings.empty() ? "monotone" : "nm";
}

json nm_json(const atlas::NmConditions& nm) {
    return {{"holds", nm.holds},
            {"p_gt_e2", nm.p_gt_e2},
            {"P_tau_e_1ptau", nm.upper_value},
            {"P_tau_e_1ptau_lt_1", nm.upper_ok},
            {"p_tau_e_taum1", nm.lower_value},
            {"p_tau_e_taum1_gt_1", nm.lower_ok},
            {"e_minus_mu_tau", nm.e_mu_tau},
            {"e_minus_mu_tau_lt_half", nm.e_mu_tau_ok},
            {"qbar2", nm.qbar2},
            {"qbar2_in_minus1_0", nm.qbar2_ok}};
}

json crossing_json(const heteroclinic::CrossingReport& rep) {
    json cs = json::array();
    for (const auto& c : rep.crossings) cs.push_back({{"t", c.t}, {"slope_sign", c.slope_sign}});
    json j = {{"level", rep.level},
              {"crossings", cs},
              {"count", rep.crossings.size()},
              {"gaps", rep.gaps},
              {"anomalies", rep.anomalies},
              {"global_max", rep.global_max},
              {"global_max_t", rep.global_max_t},
              {"tail_class", std::string(heteroclinic::to_string(rep.tail))},
              {"shape", tail_word(rep)}};
    j["first_max"] = rep.first_max_t ? json{{"t", *rep.first_max_t}, {"u", *rep.first_max_u}}
                                     : json{{"t", "inf"}, {"u", nullptr}};
    return j;
}

json time_meta() {
    return {{"time_frame", "series frame: qbar_1 = 1, u*(t) ~ e^{mu t} as t -> -inf"},
            {"units", {{"t", "time"}, {"mu", "1/time"}, {"tau", "time"}, {"u", "population density"},
                       {"c", "space/time"}, {"x", "space"}}}};
}

void write_manifest(const std::string& sub, const json& config, const std::vector<fs::path>& outs,
                    double wall, const std::string& manifest_path) {
    if (outs.empty()) return;
    fs::path path = manifest_path.empty()
                        ? outs.front().parent_path() / (sub + ".manifest.json")
                        : fs::path(manifest_path);
    json files = json::array();
    for (const auto& p : outs) files.push_back(p.string());
    const auto now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    io::write_json(path, {{"subcommand", sub},
                          {"config", config},
                          {"version", nwave::version},
                          {"wall_seconds", wall},
                          {"created", stamp},
                          {"outputs", files}});
}

// --- subcommands -----------------------------------------------------------

json analyze(double p, double tau, std::optional<double> c) {
    const model::ModelParams params(p, tau);
    json j;
    j["meta"] = time_meta();
    j["input"] = {{"p", p}, {"tau", tau}};
    j["lnp"] = params.kappa();
    j["P"] = params.P();
    j["mu"] = characteristic::mu_root(params);
    j["zeta"] = dirichlet::zeta(params);
    j["c_star"] = characteristic::minimal_speed(params);
    j["feedback"] = model::feedback_holds(params);
    j["gsc"] = model::gsc_holds(params);
    if (tau > 0.0) {
        const auto exp = dirichlet::DirichletExpansion::build(params);
        j["qbar2"] = exp.qbar(2);
        j["qbar3"] = exp.qbar(3);
        j["series"] = {{"order", exp.order()},
                       {"eps", exp.eps()},
                       {"horizon", exp.horizon()},
                       {"handoff_t0", exp.handoff_time()},
                       {"eps_rule", "maximises the horizon over (0, e^{mu tau} - 1)"}};
        const auto t1 = heteroclinic::theorem1_verdict(params);
        j["theorem1"] = t1.verdict;
        j["in_J"] = t1.in_J;
        j["J_upper"] = t1.J_upper;
        j["zeta_gt_lnp"] = t1.zeta_gt_lnp;
        j["nm_necessary"] = nm_json(atlas::nm_necessary(params));
        const auto traj = heteroclinic::integrate(exp, heteroclinic::default_t_end(exp));
        try {
            const auto rep = heteroclinic::crossings(traj, params);
            j["tail"] = tail_word(rep);
            j["heteroclinic"] = {{"max_u", rep.global_max},
                                 {"crossings", rep.crossings.size()},
                                 {"tail_class", std::string(heteroclinic::to_string(rep.tail))},
                                 {"t_end", traj.t_end()}};
        } catch (const InconclusiveTail& e) {
            j["tail"] = "inconclusive";
            j["heteroclinic"] = {{"error", e.what()}};
        }
    } else {
        j["theorem1"] = false;
        j["note"] = "tau = 0: series, heteroclinic and theorem checks need tau > 0";
    }
    if (c) {
        j["input"]["c"] = *c;
        j["classify_tail"] = std::string(characteristic::to_string(characteristic::classify_tail(params, *c)));
        const auto m = atlas::membership(params, *c);
        j["membership"] = {{"in_Dm", m.in_Dm},
                           {"in_Ds", m.in_Ds},
                           {"Dm_by_roots", m.Dm_by_roots},
                           {"Dm_by_boundary", m.Dm_by_boundary},
                           {"near_boundary", m.near_boundary},
                           {"Ds_by_convention", m.Ds_by_convention}};
        if (m.T_c) j["membership"]["T_c"] = *m.T_c;
        if (m.tau_c) j["membership"]["tau_c"] = *m.tau_c;
        const auto h = atlas::proposition_main_hypotheses(params, *c);
        j["main_hypotheses"] = {{"positive_root", h.positive_root},
                                {"ce", h.ce},
                                {"ce_lhs", h.ce_lhs},
                                {"ce_rhs", h.ce_rhs},
                                {"feedback", h.feedback}};
    }
    return j;
}

void series_cmd(double p, double tau, int n, std::optional<double> eps,
                const std::vector<fs::path>& outs) {
    const model::ModelParams params(p, tau);
    const auto exp = eps ? dirichlet::DirichletExpansion::build(params, n, *eps)
                         : dirichlet::DirichletExpansion::build(params, n);
    io::CsvTable coeffs{{"n", "qbar"}, {}};
    for (int k = 1; k <= exp.order(); ++k) coeffs.rows.push_back({double(k), exp.qbar(k)});
    io::write_csv(outs[0], coeffs);

    io::CsvTable prof{{"t", "u2", "u", "u1", "tail"}, {}};
    const double hi = std::min(0.0, exp.handoff_time());
    const double lo = hi - 10.0 / exp.mu();
    for (double t : numerics::linspace(lo, hi, 201)) {
        const auto sp = exp.evaluate(t);
        prof.rows.push_back({t, exp.u2(t), sp.value, exp.u1(t), sp.tail});
    }
    io::write_csv(outs[1], prof);
}

void heteroclinic_cmd(double p, double tau, std::optional<double> t_end, int K,
                      const std::vector<fs::path>& outs) {
    const model::ModelParams params(p, tau);
    const auto exp = dirichlet::DirichletExpansion::build(params);
    const auto traj = heteroclinic::integrate(exp, t_end.value_or(heteroclinic::default_t_end(exp)), K);
    io::CsvTable t{{"t", "u", "du"}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i) t.rows.push_back({traj.t(i), traj.u()[i], traj.du()[i]});
    io::write_csv(outs[0], t);
    json j = crossing_json(heteroclinic::crossings(traj, params));
    j["meta"] = time_meta();
    j["run"] = {{"t0", traj.t0}, {"t_end", traj.t_end()}, {"K", traj.K}, {"h", traj.h()},
                {"mu", traj.mu}, {"eps", traj.eps}, {"horizon", traj.horizon},
                {"series_order", traj.series_order}};
    io::write_json(outs[1], j);
}

void atlas_cmd(const Range& tau, const Range& p, const std::vector<fs::path>& outs) {
    const auto rows = atlas::figure2_grid(tau.lo, tau.hi, p.lo, p.hi, int(tau.n), int(p.n));
    io::CsvTable t{{"tau", "p", "lnlnp", "in_J", "zeta_gt_lnp", "flag", "zeta", "margin"}, {}};
    for (const auto& r : rows)
        t.rows.push_back({r.tau, r.p, r.lnlnp, double(r.in_J), double(r.zeta_gt_lnp),
                          double(r.flag), r.zeta, r.margin});
    io::write_csv(outs[0], t);
}

void boundaries_cmd(double P, const Range& c, const std::vector<fs::path>& outs) {
    if (!(c.lo > 0.0)) throw DomainError("boundaries: c range must be positive");
    const auto cs = numerics::logspace(c.lo, c.hi, c.n);
    io::CsvTable t{{"c", "T", "tau_c", "tau_hat", "T_star"}, {}};
    const double Ts = atlas::T_star(P);
    const double th = P > 1.0 ? atlas::tau_hat(P) : NAN;
    for (double ci : cs)
        t.rows.push_back({ci, atlas::T_of_c(P, ci), P > 1.0 ? atlas::tau_of_c(P, ci) : NAN, th, Ts});
    io::write_csv(outs[0], t);
}

json diag_json(const front::FrontDiagnostics& d, const model::ModelParams& params) {
    return {{"speed", d.speed.speed},
            {"speed_stderr", d.speed.stderr_},
            {"direction", d.speed.direction < 0 ? "left" : "right"},
            {"fit_points", d.speed.points},
            {"level", d.level},
            {"profile_t", d.t},
            {"shape", std::string(front::to_string(d.stats.shape))},
            {"overshoot", d.stats.overshoot},
            {"kappa_crossings", d.stats.kappa_crossings},
            {"crossing_xi", d.stats.crossing_xi},
            {"tail_monotone", d.stats.tail_monotone},
            {"gaps_ok", d.stats.gaps_ok},
            {"leading_edge_increasing", d.stats.leading_edge_increasing},
            {"lnp", params.kappa()},
            {"meta", {{"units", {{"speed", "space/time"}, {"xi", "space, comoving, front at 0"}}}}}};
}

json simulate_cmd(const pde::SimConfig& cfg, const std::vector<fs::path>& outs) {
    const auto rec = pde::simulate(cfg);
    io::write_snapshots(outs[0], rec);
    io::write_front(outs[1], rec);
    json meta = {{"config", io::to_json(cfg)},
                 {"nodes", rec.x.size()},
                 {"steps", cfg.total_steps()},
                 {"delay_steps", cfg.delay_steps()},
                 {"final_t", rec.final_t},
                 {"min_u", rec.min_u},
                 {"max_u", rec.max_u},
                 {"initial_condition", pde::describe(cfg.ic)}};
    try {
        meta["diagnostics"] = diag_json(front::diagnose(rec), cfg.params);
    } catch (const Error& e) {
        meta["diagnostics"] = {{"error", e.what()}};
    }
    io::write_json(outs[2], meta);
    return meta;
}

void diagnose_cmd(const std::string& in, const std::string& front_csv, double p, double tau,
                  const std::vector<fs::path>& outs) {
    const model::ModelParams params(p, tau);
    const auto snaps = io::read_snapshots(in);
    if (snaps.snapshots.empty()) throw InsufficientPoints("no snapshots in " + in);
    const double level = 0.5 * params.kappa();
    std::vector<double> t, X;
    if (!front_csv.empty()) {
        const auto tab = io::read_csv(front_csv);
        for (const auto& r : tab.rows) {
            t.push_back(r.at(0));
            X.push_back(r.at(1));
        }
    } else {
        for (const auto& s : snaps.snapshots) {
            try {
                X.push_back(front::front_position(snaps.x, s.u, level));
                t.push_back(s.t);
            } catch (const NoCrossing&) {
            }
        }
    }
    front::FrontDiagnostics d;
    d.level = level;
    d.speed = front::estimate_speed(t, X);
    const auto& last = snaps.snapshots.back();
    d.t = last.t;
    const double Xe = front::front_position(snaps.x, last.u, level);
    for (double x : snaps.x) d.xi.push_back(x - Xe);
    d.u = last.u;
    d.stats = front::classify_profile(d.xi, d.u, params, tau * d.speed.speed);
    io::write_json(outs[0], diag_json(d, params));
}

// Verification suites. Each returns true on success and fills a margins table.

bool verify_appendix(std::size_t grid, io::CsvTable& margins, json& summary) {
    const std::vector<double> Ps{1.1, 2.0, 4.8999, 10.0};
    const auto cs = numerics::logspace(1e-2, 1e3, grid);
    const auto taus = numerics::logspace(1e-2, 10.0, 300);
    const auto c22 = numerics::logspace(1e-2, 1e3, 300);
    const auto rep = atlas::verify_inclusion(Ps, cs, taus, c22);
    margins.header = {"P", "c", "T", "tau_c", "gap"};
    for (double P : Ps)
        for (double c : cs) {
            const double T = atlas::T_of_c(P, c), tc = atlas::tau_of_c(P, c);
            margins.rows.push_back({P, c, T, tc, tc - T});
        }
    bool limits_ok = true;
    json limits = json::array();
    for (double P : Ps) {
        const double dtau = std::abs(atlas::tau_of_c(P, 1e3) - atlas::tau_hat(P));
        const double dT = std::abs(atlas::T_of_c(P, 1e3) - atlas::T_star(P));
        limits_ok = limits_ok && dtau < 1e-3 && dT < 1e-3;
        limits.push_back({{"P", P}, {"tau_c_minus_tau_hat", dtau}, {"T_c_minus_T_star", dT}});
    }
    summary = {{"curve_points", rep.curve_points},
               {"min_gap", rep.min_gap},
               {"violations", rep.violations.size()},
               {"ineq22_points", rep.ineq22_points},
               {"ineq22_worst", {{"tau", rep.ineq22_worst.tau}, {"c", rep.ineq22_worst.c},
                                 {"lhs", rep.ineq22_worst.lhs}, {"rhs", rep.ineq22_worst.rhs},
                                 {"margin", rep.ineq22_worst.margin}}},
               {"ineq22_violations", rep.ineq22_violations.size()},
               {"ck_coefficients_ok", rep.ck_coefficients_ok},
               {"ck_discriminant_ok", rep.ck_discriminant_ok},
               {"ck_A_positive", rep.ck_A_positive},
               {"ck_failures", rep.ck_failures},
               {"tau_hat_minus_T_star", rep.tau_hat_minus_T_star},
               {"limits_at_c_1e3", limits}};
    return rep.ok() && limits_ok;
}

bool verify_series(std::size_t grid, io::CsvTable& margins, json& summary) {
    margins.header = {"p", "tau", "alternation_ok", "bounds_ok", "closed_form_err", "zeta_err",
                      "contour_ok"};
    std::size_t points = 0, failures = 0;
    for (double tau : numerics::linspace(0.02, 0.25, grid)) {
        const double p_max = std::exp(1.0 + std::exp(-1.0 - tau) / tau);
        const double lo = std::log(std::log(std::exp(2.0) * 1.01));
        const double hi = std::log(std::log(p_max * 0.99));
        if (!(hi > lo)) continue;
        for (double ll : numerics::linspace(lo, hi, grid)) {
            const model::ModelParams params(std::exp(std::exp(ll)), tau);
            const auto exp = dirichlet::DirichletExpansion::build(params, 20);
            bool alt = true;
            for (int n = 1; n <= 20; ++n) alt = alt && ((n % 2 == 1) ? exp.qbar(n) > 0 : exp.qbar(n) < 0);
            bool bounds = true;
            const double thi = std::min(0.0, exp.handoff_time());
            for (double t : numerics::linspace(thi - 10.0 / exp.mu(), thi, 101)) {
                const double u = exp.evaluate(t).value;
                // u - u2 is cubic in e^{mu t} and rounds to zero far out, so the lower bound is non-strict.
                bounds = bounds && exp.u2(t) <= u && u < exp.u1(t);
            }
            const auto chi = characteristic::characteristic(characteristic::CharKind::AtZeroDDE, params);
            const double mu = exp.mu(), pp = params.p();
            const double q2 = -pp * std::exp(-2 * mu * tau) / chi.value(2 * mu);
            const double q3 = pp * (0.5 - 2 * q2) * std::exp(-3 * mu * tau) / chi.value(3 * mu);
            const double cf = std::max(std::abs(q2 - exp.qbar(2)), std::abs(q3 - exp.qbar(3)));
            const double z = dirichlet::zeta(params);
            const double zerr = std::abs(z - dirichlet::zeta_quadrature(params)) / std::max(1.0, std::abs(z));
            const double sigma = exp.sigma_at(exp.eps());
            bool contour = true;
            for (int n = 1; n <= exp.order(); ++n)
                contour = contour && std::abs(exp.qbar(n)) * std::pow(sigma, n) <= sigma * (1 + 1e-12);
            const bool ok = alt && bounds && cf < 1e-12 && zerr < 1e-10 && contour;
            ++points;
            if (!ok) ++failures;
            margins.rows.push_back({params.p(), tau, double(alt), double(bounds), cf, zerr, double(contour)});
        }
    }
    summary = {{"points", points}, {"failures", failures}};
    return failures == 0 && points > 0;
}

bool verify_model(std::size_t grid, io::CsvTable& margins, json& summary) {
    margins.header = {"p", "max_schwarz"};
    bool schwarz_ok = true;
    for (double p : numerics::logspace(1.5, 1e4, grid)) {
        const model::ModelParams params(p, 0.0);
        double worst = -INFINITY;
        for (double x : numerics::linspace(1e-3, 20.0, 4 * grid + 1)) {
            if (std::abs(x - 1.0) < 1e-6) continue;
            worst = std::max(worst, model::schwarz(x, params));
        }
        schwarz_ok = schwarz_ok && worst < 0.0;
        margins.rows.push_back({p, worst});
    }
    const bool f16 = model::feedback_holds(model::ModelParams(16.0, 0.0));
    const bool f18 = model::feedback_holds(model::ModelParams(18.0, 0.0));
    const double threshold = numerics::solve_bracketed(
        [](double p) { return model::feedback_holds(model::ModelParams(p, 0.0)) ? -1.0 : 1.0; },
        {16.0, 18.0}, 1e-9);
    summary = {{"schwarz_negative", schwarz_ok},
               {"feedback_p16", f16},
               {"feedback_p18", f18},
               {"feedback_threshold", threshold}};
    return schwarz_ok && f16 && !f18;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nwave: non-monotone wavefronts of the Nicholson blowflies delay equation"};
    app.set_version_flag("--version", nwave::version);
    app.require_subcommand(1);
    int threads = 0;
    std::string manifest;
    app.add_option("--threads", threads, "OpenMP threads (NW_THREADS overrides)")->check(CLI::NonNegativeNumber);
    app.add_option("--manifest", manifest, "Where to write the run manifest");

    double p = 0, tau = 0, P = 0;
    std::optional<double> c_opt, eps_opt, t_end_opt;
    int n_coeffs = 40, K = 64;
    std::size_t grid = 200;
    std::string out, tau_range, p_range, c_range, preset, config_path, in_path, front_path, suite;

    auto* an = app.add_subcommand("analyze", "Report mu, qbar_2, zeta, c_*, theorem verdict and tail shape");
    an->add_option("--p", p, "birth amplitude p > 1")->required();
    an->add_option("--tau", tau, "delay tau >= 0")->required();
    an->add_option("--c", c_opt, "wave speed for tail and region membership");
    an->add_option("--out", out, "JSON path (default stdout)");

    auto* se = app.add_subcommand("series", "Dirichlet coefficients and the series profile");
    se->add_option("--p", p, "birth amplitude p > 1")->required();
    se->add_option("--tau", tau, "delay tau >= 0")->required();
    se->add_option("--n", n_coeffs, "number of coefficients")->check(CLI::Range(2, 400));
    se->add_option("--eps", eps_opt, "series parameter in (0, e^{mu tau} - 1)");
    se->add_option("--out", out, "coeffs.csv,profile.csv")->required();

    auto* he = app.add_subcommand("heteroclinic", "Integrate u* past the series horizon");
    he->add_option("--p", p, "birth amplitude p > 1")->required();
    he->add_option("--tau", tau, "delay tau >= 0")->required();
    he->add_option("--t-end", t_end_opt, "end time (series frame)");
    he->add_option("--k", K, "steps per delay interval")->check(CLI::Range(20, 100000));
    he->add_option("--out", out, "traj.csv,crossings.json")->required();

    auto* at = app.add_subcommand("atlas", "Theorem region on a (tau, ln ln p) grid");
    at->add_option("--tau", tau_range, "LO:HI:N")->required();
    at->add_option("--p", p_range, "LO:HI:N (uniform in ln ln p)")->required();
    at->add_option("--out", out, "fig2.csv")->required();

    auto* bo = app.add_subcommand("boundaries", "Boundary curves T(c) and tau(c)");
    bo->add_option("--P", P, "ln p - 1")->required();
    bo->add_option("--c", c_range, "LO:HI:N (log spaced)")->required();
    bo->add_option("--out", out, "curves.csv")->required();

    auto* si = app.add_subcommand("simulate", "Delay reaction-diffusion run");
    auto* pre = si->add_option("--preset", preset, "fig3 or fig4");
    auto* cfg = si->add_option("--config", config_path, "JSON config mirroring SimConfig");
    pre->excludes(cfg);
    si->add_option("--out", out, "snaps.csv,front.csv,meta.json")->required();

    auto* di = app.add_subcommand("diagnose", "Front speed and profile shape from snapshots");
    di->add_option("--in", in_path, "snapshot CSV")->required();
    di->add_option("--front", front_path, "front-track CSV (optional, finer speed fit)");
    di->add_option("--p", p, "birth amplitude p > 1")->required();
    di->add_option("--tau", tau, "delay tau >= 0")->required();
    di->add_option("--out", out, "diag.json")->required();

    auto* ve = app.add_subcommand("verify", "Certified numeric checks; exit 2 on any violation");
    ve->add_option("--suite", suite, "appendix, series or model")
        ->required()
        ->check(CLI::IsMember({"appendix", "series", "model"}));
    ve->add_option("--grid", grid, "grid resolution")->check(CLI::Range(2, 100000));
    ve->add_option("--out", out, "margins CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (const char* env = std::getenv("NW_THREADS")) {
        try {
            threads = std::stoi(env);
        } catch (const std::exception&) {
            std::cerr << "ignoring malformed NW_THREADS='" << env << "'\n";
        }
    }
    nwave::set_threads(threads);

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    try {
        if (*an) {
            const json j = analyze(p, tau, c_opt);
            emit(j, out);
            if (!out.empty() && out != "-")
                write_manifest("analyze", j["input"], {fs::path(out)}, elapsed(), manifest);
        } else if (*se) {
            const auto outs = split_outputs(out, 2, "series");
            series_cmd(p, tau, n_coeffs, eps_opt, outs);
            json c = {{"p", p}, {"tau", tau}, {"n", n_coeffs}};
            if (eps_opt) c["eps"] = *eps_opt;
            write_manifest("series", c, outs, elapsed(), manifest);
        } else if (*he) {
            const auto outs = split_outputs(out, 2, "heteroclinic");
            heteroclinic_cmd(p, tau, t_end_opt, K, outs);
            json c = {{"p", p}, {"tau", tau}, {"k", K}};
            if (t_end_opt) c["t_end"] = *t_end_opt;
            write_manifest("heteroclinic", c, outs, elapsed(), manifest);
        } else if (*at) {
            const auto outs = split_outputs(out, 1, "atlas");
            atlas_cmd(parse_range(tau_range), parse_range(p_range), outs);
            write_manifest("atlas", {{"tau", tau_range}, {"p", p_range}}, outs, elapsed(), manifest);
        } else if (*bo) {
            const auto outs = split_outputs(out, 1, "boundaries");
            boundaries_cmd(P, parse_range(c_range), outs);
            write_manifest("boundaries", {{"P", P}, {"c", c_range}}, outs, elapsed(), manifest);
        } else if (*si) {
            const auto outs = split_outputs(out, 3, "simulate");
            pde::SimConfig config;
            if (!preset.empty())
                config = pde::preset(preset);
            else if (!config_path.empty())
                config = io::config_from_json(io::read_json(config_path));
            else
                throw CLI::ValidationError("simulate", "one of --preset or --config is required");
            simulate_cmd(config, outs);
            write_manifest("simulate", io::to_json(config), outs, elapsed(), manifest);
        } else if (*di) {
            const auto outs = split_outputs(out, 1, "diagnose");
            diagnose_cmd(in_path, front_path, p, tau, outs);
            write_manifest("diagnose", {{"in", in_path}, {"front", front_path}, {"p", p}, {"tau", tau}},
                           outs, elapsed(), manifest);
        } else if (*ve) {
            io::CsvTable margins;
            json summary;
            bool ok = false;
            if (suite == "appendix")
                ok = verify_appendix(grid, margins, summary);
            else if (suite == "series")
                ok = verify_series(std::min<std::size_t>(grid, 20), margins, summary);
            else
                ok = verify_model(std::min<std::size_t>(grid, 200), margins, summary);
            summary["suite"] = suite;
            summary["passed"] = ok;
            std::cout << summary.dump(2) << '\n';
            if (!out.empty()) {
                io::write_csv(out, margins);
                write_manifest("verify", {{"suite", suite}, {"grid", grid}}, {fs::path(out)}, elapsed(),
                               manifest);
            }
            if (!ok) throw VerificationFailure("verification suite '" + suite + "' found violations");
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return 2;
    } catch (const nwave::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
