// manifest.hpp — Run manifest sidecar: config echo, version, timestamp,
// per-point residuals and warnings. Timestamps live here so the CSV bodies
// stay byte-identical across reruns.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace pblock {

struct RunManifest {
    std::string command;
    std::string version;
    std::string timestamp;  // ISO 8601 UTC
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<std::string> warnings;
    std::vector<double> point_residuals;
    std::vector<std::string> point_errors;  // empty string when the point succeeded

    static RunManifest begin(const std::string& command,
                             const std::vector<std::pair<std::string, std::string>>& config);

    void write(const std::string& path) const;
};

} // namespace pblock
