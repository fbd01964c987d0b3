#include "blmhd/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace blmhd {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

struct Entry {
    std::string value;
    int line = 0;
};

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"grid", {"nx", "ny", "y_max", "stretch", "x_scheme"}},
        {"physics", {"mu", "kappa", "eps"}},
        {"solver", {"dt", "t_end", "scheme", "cfl_safety", "output_stride", "max_halvings"}},
        {"monitors", {"delta0", "l", "enforce"}},
        {"experiment",
         {"data", "amplitude", "m", "ladder", "perturbation", "threads", "snapshots", "alpha", "sign"}},
    };
    return s;
}

double to_double(const std::string& key, const Entry& e) {
    double v = 0.0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    auto [p, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || p != end || !std::isfinite(v))
        throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": expected a number, got '" + e.value + "'",
                          e.line);
    return v;
}

int to_int(const std::string& key, const Entry& e) {
    int v = 0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    auto [p, ec] = std::from_chars(b, end, v);
    if (ec != std::errc() || p != end)
        throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": expected an integer, got '" + e.value +
                              "'",
                          e.line);
    return v;
}

bool to_bool(const std::string& key, const Entry& e) {
    const std::string v = lower(e.value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("line " + std::to_string(e.line) + ": " + key + ": expected true or false", e.line);
}

void range(bool ok, const std::string& key, const std::string& rule, int line) {
    if (!ok) throw ConfigError(key + " out of range: must be " + rule + " (line " + std::to_string(line) + ")", line);
}

}  // namespace

MultiIndex parse_alpha(const std::string& word) {
    MultiIndex a;
    for (char c : word) {
        if (c == 't')
            ++a.t_count;
        else if (c == 'x')
            ++a.x_count;
        else
            throw ConfigError("experiment.alpha: '" + word + "' must use only the letters t and x");
    }
    if (a.order() == 0) throw ConfigError("experiment.alpha must not be empty");
    return a;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
    std::map<std::string, Entry> kv;
    std::istringstream in(text);
    std::string raw, section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto c = line.find_first_of("#;");
        if (c != std::string::npos) line.erase(c);
        line = trim(line);
        if (line.empty()) continue;
        const std::string at = source + ":" + std::to_string(line_no) + ": ";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(at + "unterminated section header", line_no);
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (!schema().count(section)) throw ConfigError(at + "unknown section [" + section + "]", line_no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(at + "expected key = value", line_no);
        if (section.empty()) throw ConfigError(at + "key outside of any section", line_no);
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        const std::string full = section + "." + key;
        if (!schema().at(section).count(key)) throw ConfigError(at + "unknown key '" + full + "'", line_no);
        if (value.empty()) throw ConfigError(at + full + " has no value", line_no);
        if (auto it = kv.find(full); it != kv.end())
            throw ConfigError(source + ": duplicate key '" + full + "' on lines " + std::to_string(it->second.line) +
                                  " and " + std::to_string(line_no),
                              line_no);
        kv[full] = Entry{value, line_no};
    }

    RunConfig cfg;
    auto get = [&](const std::string& k, const std::function<void(const Entry&)>& f) {
        if (auto it = kv.find(k); it != kv.end()) f(it->second);
    };
    for (const char* req : {"grid.nx", "grid.ny"})
        if (!kv.count(req)) throw ConfigError(source + ": " + std::string(req) + " is required");

    get("grid.nx", [&](const Entry& e) {
        cfg.grid.nx = to_int("grid.nx", e);
        range(cfg.grid.nx >= 8, "grid.nx", ">= 8", e.line);
    });
    get("grid.ny", [&](const Entry& e) {
        cfg.grid.ny = to_int("grid.ny", e);
        range(cfg.grid.ny >= 8, "grid.ny", ">= 8", e.line);
    });
    get("grid.y_max", [&](const Entry& e) {
        cfg.grid.y_max = to_double("grid.y_max", e);
        range(cfg.grid.y_max >= 10.0, "grid.y_max", ">= 10", e.line);
    });
    get("grid.stretch", [&](const Entry& e) {
        cfg.grid.stretch = to_double("grid.stretch", e);
        range(cfg.grid.stretch >= 0.0, "grid.stretch", ">= 0", e.line);
    });
    get("grid.x_scheme", [&](const Entry& e) {
        const std::string v = lower(e.value);
        range(v == "fd4" || v == "spectral", "grid.x_scheme", "fd4 or spectral", e.line);
        cfg.grid.x_scheme = v == "fd4" ? XScheme::fd4 : XScheme::spectral;
    });

    Physics& p = cfg.solver.physics;
    get("physics.mu", [&](const Entry& e) {
        p.mu = to_double("physics.mu", e);
        range(p.mu > 0.0, "physics.mu", "> 0", e.line);
    });
    get("physics.kappa", [&](const Entry& e) {
        p.kappa = to_double("physics.kappa", e);
        range(p.kappa > 0.0, "physics.kappa", "> 0", e.line);
    });
    get("physics.eps", [&](const Entry& e) {
        p.eps = to_double("physics.eps", e);
        range(p.eps >= 0.0 && p.eps <= 1.0, "physics.eps", "in [0, 1]", e.line);
    });

    SolverConfig& s = cfg.solver;
    get("solver.dt", [&](const Entry& e) {
        s.dt = to_double("solver.dt", e);
        range(s.dt > 0.0, "solver.dt", "> 0", e.line);
    });
    get("solver.t_end", [&](const Entry& e) {
        s.t_end = to_double("solver.t_end", e);
        range(s.t_end > 0.0, "solver.t_end", "> 0", e.line);
    });
    get("solver.scheme", [&](const Entry& e) {
        const std::string v = lower(e.value);
        range(v == "imex-cn" || v == "imex-be", "solver.scheme", "imex-cn or imex-be", e.line);
        s.scheme = v == "imex-cn" ? Scheme::imex_cn : Scheme::imex_be;
    });
    get("solver.cfl_safety", [&](const Entry& e) {
        s.cfl_safety = to_double("solver.cfl_safety", e);
        range(s.cfl_safety > 0.0 && s.cfl_safety <= 1.0, "solver.cfl_safety", "in (0, 1]", e.line);
    });
    get("solver.output_stride", [&](const Entry& e) {
        s.output_stride = to_int("solver.output_stride", e);
        range(s.output_stride >= 1, "solver.output_stride", ">= 1", e.line);
    });
    get("solver.max_halvings", [&](const Entry& e) {
        s.max_halvings = to_int("solver.max_halvings", e);
        range(s.max_halvings >= 0 && s.max_halvings <= 40, "solver.max_halvings", "in [0, 40]", e.line);
    });
    get("monitors.delta0", [&](const Entry& e) {
        s.delta0 = to_double("monitors.delta0", e);
        range(s.delta0 > 0.0 && s.delta0 < 1.0, "monitors.delta0", "in (0, 1)", e.line);
    });
    get("monitors.l", [&](const Entry& e) {
        s.l = to_double("monitors.l", e);
        range(s.l >= 1.0, "monitors.l", ">= 1", e.line);
    });
    get("monitors.enforce", [&](const Entry& e) { s.enforce_monitors = to_bool("monitors.enforce", e); });

    ExperimentConfig& x = cfg.experiment;
    get("experiment.data", [&](const Entry& e) { x.data = lower(e.value); });
    get("experiment.amplitude", [&](const Entry& e) {
        x.amplitude = to_double("experiment.amplitude", e);
        range(std::abs(x.amplitude) <= 1.0, "experiment.amplitude", "in [-1, 1]", e.line);
    });
    get("experiment.m", [&](const Entry& e) {
        x.m = to_int("experiment.m", e);
        range(x.m >= 1 && x.m <= 4, "experiment.m", "in [1, 4]", e.line);
    });
    get("experiment.ladder", [&](const Entry& e) {
        x.ladder.clear();
        std::stringstream ss(e.value);
        std::string item;
        while (std::getline(ss, item, ',')) x.ladder.push_back(to_double("experiment.ladder", {trim(item), e.line}));
        range(!x.ladder.empty(), "experiment.ladder", "a non-empty list", e.line);
        for (std::size_t k = 0; k < x.ladder.size(); ++k) {
            range(x.ladder[k] >= 0.0, "experiment.ladder", "nonnegative", e.line);
            if (k > 0) range(x.ladder[k] < x.ladder[k - 1], "experiment.ladder", "strictly decreasing", e.line);
        }
    });
    get("experiment.perturbation", [&](const Entry& e) {
        x.perturbation = to_double("experiment.perturbation", e);
        range(std::abs(x.perturbation) <= 1e-2, "experiment.perturbation", "at most 1e-2 in size", e.line);
    });
    get("experiment.threads", [&](const Entry& e) {
        x.threads = to_int("experiment.threads", e);
        range(x.threads >= 1 && x.threads <= 64, "experiment.threads", "in [1, 64]", e.line);
    });
    get("experiment.snapshots", [&](const Entry& e) { x.snapshots = to_bool("experiment.snapshots", e); });
    get("experiment.alpha", [&](const Entry& e) {
        x.alpha = lower(e.value);
        try {
            parse_alpha(x.alpha);
        } catch (const ConfigError& err) {
            throw ConfigError(std::string(err.what()) + " (line " + std::to_string(e.line) + ")", e.line);
        }
    });
    get("experiment.sign", [&](const Entry& e) {
        x.sign = lower(e.value);
        range(x.sign == "corrected" || x.sign == "as-printed", "experiment.sign", "corrected or as-printed", e.line);
    });

    std::string canon;
    for (const auto& [k, e] : kv) canon += k + "=" + e.value + "\n";
    cfg.canonical = canon;
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path.filename().string());
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out += hex[md[k] >> 4];
        out += hex[md[k] & 15];
    }
    return out;
}

std::string config_digest(const RunConfig& cfg) { return sha256_hex(cfg.canonical); }

}  // namespace blmhd
