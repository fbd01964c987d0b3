/// @file output.hpp
/// @brief CSV, JSON, binary snapshots and the run manifest.
#pragma once

#include "blmhd/state.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace blmhd {

using Json = nlohmann::ordered_json;

/// Round-trip exact decimal form (%.17g); nan and inf are written as such.
std::string format_double(double v);

/// Quotes a cell when it holds a comma, quote, CR or LF (RFC 4180).
std::string csv_escape(const std::string& cell);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::vector<double> column(const std::string& name) const;
};

std::string to_csv(const CsvTable& t);
CsvTable parse_csv(const std::string& text);
CsvTable numeric_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const CsvTable& t);
CsvTable read_csv(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

/// Binary layout: "BLMHD1", then little-endian f64 nx, ny, y_max, stretch, time,
/// then rho, u, h, v, g, psi each as nx*ny f64 in x-major order.
struct Snapshot {
    int nx = 0, ny = 0;
    double y_max = 0.0, stretch = 0.0, time = 0.0;
    std::vector<double> rho, u, h, v, g, psi;
};

std::string encode_snapshot(const State& s);
Snapshot decode_snapshot(const std::string& bytes);
void write_snapshot(const std::filesystem::path& path, const State& s);
Snapshot read_snapshot(const std::filesystem::path& path);

struct RunManifest {
    std::string verb;
    std::string config_digest;
    std::string version;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
    /// Pass or fail per assertion group, in insertion order.
    std::vector<std::pair<std::string, bool>> suites;

    bool passed() const;
    Json to_json() const;
};

/// UTC time as ISO 8601.
std::string utc_timestamp();

}  // namespace blmhd
