#ifndef NWAVE_IO_HPP
#define NWAVE_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nwave/pde.hpp"

namespace nwave::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

/// Shortest representation that reads back to the same double.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Comma separated, '.' decimal, LF line ends, header row first.
void write_csv(const fs::path& path, const CsvTable& table);
CsvTable read_csv(const fs::path& path);

/// Pretty-printed with sorted keys.
void write_json(const fs::path& path, const json& j);
json read_json(const fs::path& path);

/// Header "t,x_0,x_1,...", then one row per snapshot with t first.
void write_snapshots(const fs::path& path, const pde::SpacetimeRecord& record);

struct SnapshotTable {
    std::vector<double> x;
    std::vector<pde::Snapshot> snapshots;
};
SnapshotTable read_snapshots(const fs::path& path);

/// Columns t, X.
void write_front(const fs::path& path, const pde::SpacetimeRecord& record);

json to_json(const pde::SimConfig& config);
/// Field names mirror SimConfig; throws ConfigError on missing or bad fields.
pde::SimConfig config_from_json(const json& j);

}  // namespace nwave::io

#endif
