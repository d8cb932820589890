#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "aggsim/engine.hpp"
#include "aggsim/harness.hpp"

namespace aggsim {

/// Everything a config file can set. An empty file yields the reference setup.
struct RunSettings {
    TrialConfig trial;
    /// arena_diameter / site_diameter given explicitly instead of the per-size preset.
    bool arena_explicit = false;
    SweepSpec sweep;
    int workers = 0;
    double trajectory_interval = 1.0;
};

/// Sets one field from its textual value. Throws ConfigError naming the key.
void apply_setting(RunSettings& settings, std::string_view key, std::string_view value);

/// Parses the flat `key = value` format (`#` starts a comment). Does not resolve the arena.
RunSettings parse_config(std::istream& in);
RunSettings load_config(const std::filesystem::path& path);

/// Resolves the arena (preset unless explicit) and validates the trial config.
void finalize(RunSettings& settings);

/// Effective configuration in the same format parse_config reads.
std::string dump_config(const RunSettings& settings);

Variant parse_variant(std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace aggsim
