#include "ringopo/manifest.hpp"

#include <chrono>
#include <ctime>

#include <nlohmann/json.hpp>

#include "ringopo/textio.hpp"

namespace ringopo::manifest {

std::string now_utc_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = "ringopo";
    j["version"] = tool_version;
    j["subcommand"] = subcommand;
    j["config_path"] = config_path;
    j["input_sha256"] = input_sha256;
    j["seed"] = seed;
    j["wall_clock_utc"] = wall_clock_utc;
    j["config"] = resolved_config;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::filesystem::path& out_dir) const {
    write_file(out_dir / "manifest.json", to_json());
}

}  // namespace ringopo::manifest
