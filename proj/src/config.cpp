// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#include "takv/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "takv/errors.hpp"

namespace takv {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        std::string t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

}  // namespace

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

KeyValueConfig KeyValueConfig::parse(const std::string& text, const std::string& origin) {
    KeyValueConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + t + "'");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        cfg.values_[key] = value;
    }
    return cfg;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

std::string KeyValueConfig::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        throw ConfigError(origin_ + ": missing required key '" + key + "'");
    }
    return it->second;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::get_real(const std::string& key) const {
    const std::string raw = get_string(key);
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(raw.c_str(), &end);
    if (errno != 0 || end == raw.c_str() || *end != '\0') {
        throw ConfigError(origin_ + ": key '" + key + "' is not a real number: '" + raw + "'");
    }
    return v;
}

double KeyValueConfig::get_real(const std::string& key, double fallback) const {
    return has(key) ? get_real(key) : fallback;
}

std::int64_t KeyValueConfig::get_int(const std::string& key) const {
    const std::string raw = get_string(key);
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(raw.c_str(), &end, 10);
    if (errno != 0 || end == raw.c_str() || *end != '\0') {
        throw ConfigError(origin_ + ": key '" + key + "' is not an integer: '" + raw + "'");
    }
    return static_cast<std::int64_t>(v);
}

std::int64_t KeyValueConfig::get_int(const std::string& key, std::int64_t fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(origin_ + ": key '" + key + "' is not a boolean: '" + v + "'");
}

std::vector<double> KeyValueConfig::get_real_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_commas(get_string(key))) {
        errno = 0;
        char* end = nullptr;
        double v = std::strtod(item.c_str(), &end);
        if (errno != 0 || end == item.c_str() || *end != '\0') {
            throw ConfigError(origin_ + ": key '" + key + "' has non-real element '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<std::int64_t> KeyValueConfig::get_int_list(const std::string& key) const {
    std::vector<std::int64_t> out;
    for (const auto& item : split_commas(get_string(key))) {
        errno = 0;
        char* end = nullptr;
        long long v = std::strtoll(item.c_str(), &end, 10);
        if (errno != 0 || end == item.c_str() || *end != '\0') {
            throw ConfigError(origin_ + ": key '" + key + "' has non-integer element '" + item +
                              "'");
        }
        out.push_back(static_cast<std::int64_t>(v));
    }
    return out;
}

std::vector<std::string> KeyValueConfig::get_string_list(const std::string& key) const {
    return split_commas(get_string(key));
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

std::string KeyValueConfig::canonical_text() const {
    std::ostringstream out;
    for (const auto& [k, v] : values_) out << k << "=" << v << "\n";
    return out.str();
}

std::uint64_t config_hash(const KeyValueConfig& cfg) {
    const std::string text = cfg.canonical_text();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

}  // namespace takv
