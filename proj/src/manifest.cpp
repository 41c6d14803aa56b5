// manifest.cpp — Sidecar writer

#include "pblock/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "pblock/csvio.hpp"
#include "pblock/errors.hpp"

namespace pblock {

RunManifest RunManifest::begin(
    const std::string& command,
    const std::vector<std::pair<std::string, std::string>>& config) {
    RunManifest m;
    m.command = command;
    m.version = PBLOCK_VERSION;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    m.timestamp = buf;
    m.config_echo = config;
    return m;
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("manifest: cannot open " + path);
    out << "command = " << command << '\n';
    out << "version = " << version << '\n';
    out << "timestamp = " << timestamp << '\n';
    for (const auto& [k, v] : config_echo) {
        out << "config." << k << " = " << v << '\n';
    }
    for (size_t i = 0; i < warnings.size(); ++i) {
        out << "warning." << i << " = " << warnings[i] << '\n';
    }
    char idx[16];
    for (size_t i = 0; i < point_residuals.size(); ++i) {
        std::snprintf(idx, sizeof idx, "%05zu", i);
        out << "point." << idx << ".residual = " << sci(point_residuals[i]);
        if (i < point_errors.size() && !point_errors[i].empty()) {
            out << "\npoint." << idx << ".error = " << point_errors[i];
        }
        out << '\n';
    }
}

} // namespace pblock
