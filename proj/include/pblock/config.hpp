// config.hpp — Flat key-value run configuration files

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pblock/errors.hpp"

namespace pblock {

// Malformed files, missing keys, unparseable values. The CLI maps this to
// exit code 2.
struct ConfigError : Error {
    using Error::Error;
};

// One `key = value` pair per line; '#' starts a comment; blank lines ignored.
// Keys keep their file order for the manifest echo.
class Config {
public:
    static Config load(const std::string& path);
    static Config from_string(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_double_list(const std::string& key) const;

    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }

private:
    std::vector<std::pair<std::string, std::string>> entries_;
    std::string origin_;

    const std::string* find(const std::string& key) const;
};

} // namespace pblock
