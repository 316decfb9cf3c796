// Copyright (C) 2026 the takv authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace takv {

/**
 * Flat key = value configuration file. Lines starting with '#' and blank
 * lines are ignored; values keep everything after the first '='
 * (trimmed). LastRepeated keys overwrite earlier ones, which is what the
 * CLI relies on to apply overrides.
 */
class KeyValueConfig {
public:
    static KeyValueConfig load(const std::string& path);
    static KeyValueConfig parse(const std::string& text, const std::string& origin = "<string>");

    bool has(const std::string& key) const;

    // Typed getters. The no-default forms throw ConfigError naming the
    // key when it is absent; all forms throw on unparseable values.
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_real(const std::string& key) const;
    double get_real(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // Comma-separated lists.
    std::vector<double> get_real_list(const std::string& key) const;
    std::vector<std::int64_t> get_int_list(const std::string& key) const;
    std::vector<std::string> get_string_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value);

    // Canonical text form (sorted keys) used for hashing so that key
    // order in the file does not affect the manifest.
    std::string canonical_text() const;

    const std::map<std::string, std::string>& entries() const { return values_; }
    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::string> values_;
    std::string origin_;
};

// FNV-1a over the canonical config text; embedded in every output file.
std::uint64_t config_hash(const KeyValueConfig& cfg);

std::string hash_hex(std::uint64_t h);

}  // namespace takv
