#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nwave/io.hpp"

namespace fs = std::filesystem;
using nwave::io::json;

namespace {

const fs::path tmp = NWAVE_TEST_TMP;

int run(const std::string& args) {
    fs::create_directories(tmp);
    const std::string cmd = std::string("cd '") + tmp.string() + "' && '" + NWAVE_CLI_PATH + "' " + args +
                            " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string capture(const std::string& args) {
    fs::create_directories(tmp);
    const std::string cmd = std::string("cd '") + tmp.string() + "' && '" + NWAVE_CLI_PATH + "' " + args;
    std::string out;
    if (FILE* f = popen(cmd.c_str(), "r")) {
        char buf[4096];
        while (std::size_t n = std::fread(buf, 1, sizeof buf, f)) out.append(buf, n);
        pclose(f);
    }
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("analyze reports the reference point") {
    const auto j = json::parse(capture("analyze --p 365 --tau 0.07"));
    CHECK(j["mu"].get<double>() == doctest::Approx(33.64).epsilon(3e-4));
    CHECK(j["qbar2"].get<double>() < -0.045);
    CHECK(j["zeta"].get<double>() > j["lnp"].get<double>());
    CHECK(j["theorem1"].get<bool>());
    CHECK(j["tail"] == "nm");
    CHECK(j["c_star"].get<double>() == doctest::Approx(7.89).epsilon(2e-3));
    CHECK(j["nm_necessary"]["holds"].get<bool>());
    CHECK(j.contains("meta"));

    const auto k = json::parse(capture("analyze --p 365 --tau 0.07 --c 48"));
    CHECK(k["classify_tail"] == "EventuallyMonotone");
    CHECK(k["membership"]["in_Dm"].get<bool>());

    const auto z = json::parse(capture("analyze --p 5 --tau 0"));
    CHECK(z["c_star"].get<double>() == doctest::Approx(4.0));
    CHECK_FALSE(z["theorem1"].get<bool>());
}

TEST_CASE("exit codes") {
    CHECK(run("analyze --p 0.5 --tau 0.1") == 1);
    CHECK(run("analyze --tau 0.1") == 64);
    CHECK(run("frobnicate") == 64);
    CHECK(run("atlas --tau 1:0:3 --p 8:9:2 --out x.csv") == 64);
    CHECK(run("series --p 365 --tau 0.07 --out only_one.csv") == 64);
    CHECK(run("verify --suite nonsense") == 64);
    CHECK(run("verify --suite model --grid 20") == 0);
    CHECK(run("simulate --preset fig9 --out a.csv,b.csv,c.json") == 1);
    CHECK(run("--version") == 0);
}

TEST_CASE("series output is deterministic and comes with a manifest") {
    REQUIRE(run("series --p 365 --tau 0.07 --out s1/c.csv,s1/p.csv") == 0);
    REQUIRE(run("series --p 365 --tau 0.07 --out s2/c.csv,s2/p.csv") == 0);
    CHECK(slurp(tmp / "s1/c.csv") == slurp(tmp / "s2/c.csv"));
    CHECK(slurp(tmp / "s1/p.csv") == slurp(tmp / "s2/p.csv"));
    const auto m = nwave::io::read_json(tmp / "s1/series.manifest.json");
    CHECK(m["subcommand"] == "series");
    CHECK(m["outputs"].size() == 2);
    const auto c = nwave::io::read_csv(tmp / "s1/c.csv");
    CHECK(c.rows.size() == 40);
    CHECK(c.rows[0][1] == 1.0);
}

TEST_CASE("heteroclinic, boundaries and atlas files") {
    REQUIRE(run("heteroclinic --p 365 --tau 0.07 --out h/traj.csv,h/cross.json") == 0);
    const auto cj = nwave::io::read_json(tmp / "h/cross.json");
    CHECK(cj["count"].get<int>() >= 1);
    CHECK(cj["tail_class"] == "MonotoneTail");

    REQUIRE(run("boundaries --P 4.9 --c 0.01:1000:20 --out b/curves.csv") == 0);
    const auto b = nwave::io::read_csv(tmp / "b/curves.csv");
    REQUIRE(b.rows.size() == 20);
    for (const auto& r : b.rows) CHECK(r[1] < r[2]);  // T(c) < tau(c)

    REQUIRE(run("atlas --tau 0.01:0.3:5 --p 8:10000:6 --out a/fig2.csv") == 0);
    CHECK(nwave::io::read_csv(tmp / "a/fig2.csv").rows.size() == 30);
}

TEST_CASE("simulate from a config file, then diagnose") {
    json cfg = {{"params", {{"p", 365.0}, {"tau", 0.07}}},
                {"x_lo", -60.0}, {"x_hi", 60.0}, {"dx", 0.2}, {"dt", 0.01}, {"t_end", 1.0},
                {"scheme", "cn"},
                {"ic", {{"type", "exptail"}, {"beta", 0.7}}},
                {"snapshot_times", {0.0, 0.25, 0.5, 0.75, 1.0}}};
    nwave::io::write_json(tmp / "cfg.json", cfg);
    REQUIRE(run("simulate --config cfg.json --out sim/snaps.csv,sim/front.csv,sim/meta.json") == 0);
    const auto meta = nwave::io::read_json(tmp / "sim/meta.json");
    CHECK(meta["diagnostics"]["direction"] == "left");
    REQUIRE(run("diagnose --in sim/snaps.csv --front sim/front.csv --p 365 --tau 0.07 --out sim/diag.json") == 0);
    const auto d = nwave::io::read_json(tmp / "sim/diag.json");
    CHECK(d["speed"].get<double>() == doctest::Approx(meta["diagnostics"]["speed"].get<double>()));
    CHECK(run("diagnose --in missing.csv --p 365 --tau 0.07 --out x.json") == 1);
}
