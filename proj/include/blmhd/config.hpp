/// @file config.hpp
/// @brief INI-style run configuration.
///
/// Sections and keys (defaults in brackets, nx and ny are required):
///   [grid]       nx, ny, y_max [30], stretch [3], x_scheme [fd4 | spectral]
///   [physics]    mu [1], kappa [1], eps [0.01]
///   [solver]     dt [1e-3], t_end [1], scheme [imex-cn | imex-be], cfl_safety [0.5],
///                output_stride [1], max_halvings [20]
///   [monitors]   delta0 [0.25], l [2], enforce [true]
///   [experiment] data [smooth], amplitude [0.1], m [2], ladder [0.1,0.05,0.025,0.0125],
///                perturbation [1e-6], threads [1], snapshots [false], alpha [x],
///                sign [corrected | as-printed]
/// Lines are `key = value`; `#` and `;` start comments.
#pragma once

#include "blmhd/ops.hpp"
#include "blmhd/solver.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace blmhd {

struct ConfigError : std::runtime_error {
    int line = 0;
    ConfigError(const std::string& what, int line_no = 0) : std::runtime_error(what), line(line_no) {}
};

struct ExperimentConfig {
    std::string data = "smooth";
    double amplitude = 0.1;
    int m = 2;
    std::vector<double> ladder = {0.1, 0.05, 0.025, 0.0125};
    double perturbation = 1e-6;
    int threads = 1;
    bool snapshots = false;
    /// Tangential index as a word over {t, x}, e.g. "x", "xx", "tx".
    std::string alpha = "x";
    std::string sign = "corrected";
};

struct RunConfig {
    GridSpec grid;
    SolverConfig solver;
    ExperimentConfig experiment;
    /// Sorted `section.key=value` lines of every key given, used for the digest.
    std::string canonical;
};

RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Parses a tangential index word such as "tx"; throws ConfigError otherwise.
MultiIndex parse_alpha(const std::string& word);

/// Lower-case hex SHA-256 of the canonical text.
std::string config_digest(const RunConfig& cfg);
std::string sha256_hex(const std::string& data);

}  // namespace blmhd
