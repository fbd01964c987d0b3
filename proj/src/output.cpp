#include "blmhd/output.hpp"

#include <array>
#include <bit>
#include <cerrno>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace blmhd {

namespace {

constexpr char kMagic[] = "BLMHD1";
constexpr std::size_t kMagicLen = 6;

[[noreturn]] void fs_error(const std::string& what, const std::filesystem::path& p) {
    throw std::runtime_error(what + " " + p.string() + ": " + std::strerror(errno));
}

void put_f64(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((bits >> (8 * k)) & 0xff));
}

double get_f64(const std::string& in, std::size_t& pos) {
    if (pos + 8 > in.size()) throw std::runtime_error("snapshot truncated");
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + k])) << (8 * k);
    pos += 8;
    return std::bit_cast<double>(bits);
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return buf.data();
}

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\r\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<double> CsvTable::column(const std::string& name) const {
    std::size_t c = 0;
    while (c < header.size() && header[c] != name) ++c;
    if (c == header.size()) throw std::out_of_range("no CSV column '" + name + "'");
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(std::stod(r.at(c)));
    return out;
}

std::string to_csv(const CsvTable& t) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            out += csv_escape(cells[k]);
        }
        out += "\r\n";
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
    return out;
}

CsvTable parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string cell;
    bool quoted = false, any = false;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char c = text[k];
        if (quoted) {
            if (c == '"') {
                if (k + 1 < text.size() && text[k + 1] == '"') {
                    cell += '"';
                    ++k;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            any = true;
        } else if (c == ',') {
            rec.push_back(std::move(cell));
            cell.clear();
            any = true;
        } else if (c == '\r' || c == '\n') {
            if (c == '\r' && k + 1 < text.size() && text[k + 1] == '\n') ++k;
            rec.push_back(std::move(cell));
            cell.clear();
            records.push_back(std::move(rec));
            rec.clear();
            any = false;
        } else {
            cell += c;
            any = true;
        }
    }
    if (quoted) throw std::runtime_error("CSV ends inside a quoted field");
    if (any || !rec.empty()) {
        rec.push_back(std::move(cell));
        records.push_back(std::move(rec));
    }
    CsvTable t;
    if (records.empty()) return t;
    t.header = std::move(records.front());
    t.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    return t;
}

CsvTable numeric_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    CsvTable t;
    t.header = header;
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        for (double v : r) cells.push_back(format_double(v));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) fs_error("cannot write", path);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!f) fs_error("write failed for", path);
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fs_error("cannot read", path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_csv(const std::filesystem::path& path, const CsvTable& t) { write_text(path, to_csv(t)); }
CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }
void write_json(const std::filesystem::path& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::string encode_snapshot(const State& s) {
    const Grid& g = s.grid();
    std::string out(kMagic, kMagicLen);
    out.reserve(kMagicLen + 8 * (5 + 6 * g.size()));
    for (double v : {double(g.nx()), double(g.ny()), g.spec().y_max, g.spec().stretch, s.time}) put_f64(out, v);
    for (const Field* f : {&s.rho, &s.u, &s.h, &s.v, &s.g, &s.psi})
        for (double v : f->values()) put_f64(out, v);
    return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
    if (bytes.size() < kMagicLen || bytes.compare(0, kMagicLen, kMagic) != 0)
        throw std::runtime_error("not a snapshot: bad magic bytes");
    std::size_t pos = kMagicLen;
    Snapshot s;
    const double nx = get_f64(bytes, pos), ny = get_f64(bytes, pos);
    if (!(nx >= 1 && ny >= 1 && nx == std::floor(nx) && ny == std::floor(ny) && nx * ny < 1e9))
        throw std::runtime_error("snapshot header has invalid dimensions");
    s.nx = static_cast<int>(nx);
    s.ny = static_cast<int>(ny);
    s.y_max = get_f64(bytes, pos);
    s.stretch = get_f64(bytes, pos);
    s.time = get_f64(bytes, pos);
    const std::size_t n = static_cast<std::size_t>(s.nx) * s.ny;
    if (bytes.size() != pos + 6 * 8 * n) throw std::runtime_error("snapshot size does not match its header");
    for (auto* f : {&s.rho, &s.u, &s.h, &s.v, &s.g, &s.psi}) {
        f->resize(n);
        for (auto& v : *f) v = get_f64(bytes, pos);
    }
    return s;
}

void write_snapshot(const std::filesystem::path& path, const State& s) { write_text(path, encode_snapshot(s)); }
Snapshot read_snapshot(const std::filesystem::path& path) { return decode_snapshot(read_text(path)); }

bool RunManifest::passed() const {
    for (const auto& [name, ok] : suites)
        if (!ok) return false;
    return true;
}

Json RunManifest::to_json() const {
    Json j;
    j["verb"] = verb;
    j["config_digest"] = config_digest;
    j["version"] = version;
    j["started"] = started;
    j["finished"] = finished;
    j["outputs"] = outputs;
    Json s = Json::object();
    for (const auto& [name, ok] : suites) s[name] = ok ? "pass" : "fail";
    j["suites"] = s;
    j["passed"] = passed();
    return j;
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

}  // namespace blmhd
