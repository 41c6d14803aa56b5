// config.cpp — Parsing of flat key-value run files

#include "pblock/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pblock {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return from_string(buf.str(), path);
}

Config Config::from_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": empty key or value");
        }
        cfg.entries_.emplace_back(key, value);
    }
    return cfg;
}

const std::string* Config::find(const std::string& key) const {
    const std::string* out = nullptr;
    for (const auto& [k, v] : entries_) {
        if (k == key) out = &v;  // last occurrence wins
    }
    return out;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

std::string Config::get_string(const std::string& key) const {
    const std::string* v = find(key);
    if (!v) throw ConfigError(origin_ + ": missing key '" + key + "'");
    return *v;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    const std::string* v = find(key);
    return v ? *v : fallback;
}

namespace {

double parse_double(const std::string& value, const std::string& key,
                    const std::string& origin) {
    try {
        size_t pos = 0;
        const double d = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ConfigError(origin + ": key '" + key + "': invalid number '" + value + "'");
    }
}

} // namespace

double Config::get_double(const std::string& key) const {
    return parse_double(get_string(key), key, origin_);
}

double Config::get_double(const std::string& key, double fallback) const {
    const std::string* v = find(key);
    return v ? parse_double(*v, key, origin_) : fallback;
}

int Config::get_int(const std::string& key) const {
    const double d = get_double(key);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d) {
        throw ConfigError(origin_ + ": key '" + key + "': expected integer");
    }
    return i;
}

int Config::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") return true;
    if (*v == "false" || *v == "0" || *v == "no" || *v == "off") return false;
    throw ConfigError(origin_ + ": key '" + key + "': invalid boolean '" + *v + "'");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    const std::string raw = get_string(key);
    std::vector<double> out;
    std::string item;
    std::istringstream in(raw);
    while (std::getline(in, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (item.empty()) continue;
        out.push_back(parse_double(item, key, origin_));
    }
    if (out.empty()) {
        throw ConfigError(origin_ + ": key '" + key + "': empty list");
    }
    return out;
}

} // namespace pblock
