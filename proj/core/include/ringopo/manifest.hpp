#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ringopo::manifest {

inline constexpr const char* tool_version = "0.1.0";

// Run record emitted next to every subcommand's outputs. Everything except
// wall_clock_utc is a pure function of (config, seed), so a re-run
// reproduces all listed outputs byte for byte.
struct RunManifest {
    std::string subcommand;
    std::string config_path;
    std::string input_sha256;
    uint64_t seed = 0;
    std::string wall_clock_utc;
    std::map<std::string, std::string> resolved_config;
    std::vector<std::string> outputs;  // file names relative to the output dir

    std::string to_json() const;
    void write(const std::filesystem::path& out_dir) const;  // manifest.json
};

std::string now_utc_iso8601();

}  // namespace ringopo::manifest
