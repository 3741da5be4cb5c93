#include "nwave/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nwave/errors.hpp"

namespace nwave::io {

namespace {

std::ofstream open_out(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return in;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_double(const std::string& s) {
    double v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
        if (s == "nan") return NAN;
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        throw Error("malformed number '" + s + "' in CSV");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw Error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void write_csv(const fs::path& path, const CsvTable& table) {
    auto out = open_out(path);
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
    if (!out) throw Error("write failed for " + path.string());
}

CsvTable read_csv(const fs::path& path) {
    auto in = open_in(path);
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw Error(path.string() + " is empty");
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& cell : split(line)) row.push_back(parse_double(cell));
        if (row.size() != t.header.size())
            throw Error("row width does not match the header in " + path.string());
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_json(const fs::path& path, const json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw Error("write failed for " + path.string());
}

json read_json(const fs::path& path) {
    auto in = open_in(path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void write_snapshots(const fs::path& path, const pde::SpacetimeRecord& record) {
    CsvTable t;
    t.header.push_back("t");
    for (double x : record.x) t.header.push_back(format_double(x));
    for (const auto& s : record.snapshots) {
        std::vector<double> row{s.t};
        row.insert(row.end(), s.u.begin(), s.u.end());
        t.rows.push_back(std::move(row));
    }
    write_csv(path, t);
}

SnapshotTable read_snapshots(const fs::path& path) {
    const CsvTable t = read_csv(path);
    if (t.header.size() < 2 || t.header[0] != "t")
        throw Error(path.string() + " is not a snapshot file (header must start with t)");
    SnapshotTable s;
    for (std::size_t i = 1; i < t.header.size(); ++i) s.x.push_back(parse_double(t.header[i]));
    for (const auto& row : t.rows) s.snapshots.push_back({row[0], {row.begin() + 1, row.end()}});
    return s;
}

void write_front(const fs::path& path, const pde::SpacetimeRecord& record) {
    CsvTable t{{"t", "X"}, {}};
    for (const auto& f : record.front) t.rows.push_back({f.t, f.X});
    write_csv(path, t);
}

json to_json(const pde::SimConfig& c) {
    json ic;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, pde::HeavisideIC>) {
                ic = {{"type", "heaviside"}, {"level", v.level}};
            } else if constexpr (std::is_same_v<T, pde::ExpTailIC>) {
                ic = {{"type", "exptail"}, {"beta", v.beta}, {"cap", v.cap}};
            } else if constexpr (std::is_same_v<T, pde::TanhIC>) {
                ic = {{"type", "tanh"}, {"level", v.level}, {"width", v.width}, {"center", v.center}};
            } else {
                ic = {{"type", "uniform"}, {"value", v.value}};
            }
        },
        c.ic);
    json j = {{"params", {{"p", c.params.p()}, {"tau", c.params.tau()}}},
              {"x_lo", c.x_lo},
              {"x_hi", c.x_hi},
              {"dx", c.dx},
              {"dt", c.dt},
              {"t_end", c.t_end},
              {"scheme", std::string(pde::to_string(c.scheme))},
              {"ic", ic},
              {"u_lo", c.u_lo},
              {"u_hi", c.u_hi},
              {"snapshot_times", c.snapshot_times},
              {"track_level", c.level()},
              {"name", c.name},
              {"note", c.note}};
    return j;
}

pde::SimConfig config_from_json(const json& j) {
    try {
        pde::SimConfig c;
        const json& pj = j.contains("params") ? j.at("params") : j;
        c.params = model::ModelParams(pj.at("p").get<double>(), pj.at("tau").get<double>());
        c.x_lo = j.at("x_lo").get<double>();
        c.x_hi = j.at("x_hi").get<double>();
        c.dx = j.at("dx").get<double>();
        c.dt = j.at("dt").get<double>();
        c.t_end = j.at("t_end").get<double>();
        c.scheme = pde::scheme_from_string(j.value("scheme", std::string("cn")));
        const json& ic = j.at("ic");
        const std::string type = ic.at("type").get<std::string>();
        const double kappa = c.params.kappa();
        if (type == "heaviside")
            c.ic = pde::HeavisideIC{ic.value("level", kappa)};
        else if (type == "exptail")
            c.ic = pde::ExpTailIC{ic.at("beta").get<double>(), ic.value("cap", kappa)};
        else if (type == "tanh")
            c.ic = pde::TanhIC{ic.value("level", kappa), ic.at("width").get<double>(),
                               ic.value("center", 0.0)};
        else if (type == "uniform")
            c.ic = pde::UniformIC{ic.at("value").get<double>()};
        else
            throw ConfigError("unknown initial condition type '" + type + "'");
        c.u_lo = j.value("u_lo", 0.0);
        c.u_hi = j.value("u_hi", kappa);
        c.snapshot_times = j.value("snapshot_times", std::vector<double>{});
        if (j.contains("track_level")) c.track_level = j.at("track_level").get<double>();
        c.name = j.value("name", std::string());
        c.note = j.value("note", std::string());
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

}  // namespace nwave::io
