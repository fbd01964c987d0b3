/// @file commands.hpp
/// @brief The CLI verbs: each runs one study from a config and writes its outputs.
#pragma once

#include "blmhd/config.hpp"
#include "blmhd/output.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace blmhd {

struct CommandOptions {
    /// Shuffles corpus order only; numerics do not depend on it.
    std::optional<std::uint64_t> seed;
    /// Warnings count as failures.
    bool strict = false;
};

struct CommandResult {
    RunManifest manifest;
    Json summary;
    /// Zero iff every assertion passed.
    int exit_code = 0;
};

const std::vector<std::string>& command_verbs();

/// Writes <verb>.csv, summary.json and manifest.json (plus snapshots/ when enabled)
/// into out_dir, creating it. Throws std::invalid_argument for an unknown verb.
CommandResult run_command(const std::string& verb, const RunConfig& cfg, const std::filesystem::path& out_dir,
                          const CommandOptions& opts = {});

}  // namespace blmhd
