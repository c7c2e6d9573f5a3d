#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ghostsim {

/// Flat `key = value` configuration with dotted keys.
///
/// Lines are either blank, `# comment`, or `key = value`. Keys match
/// [a-z0-9_.]+, values are taken verbatim after trimming. Parse errors name
/// the offending line. Serialisation is sorted by key, so write/parse round
/// trips and equal configs serialise identically.
class Config {
public:
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");
    static Config parse_file(const std::string& path);

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    // Required accessors throw when the key is missing or malformed.
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
    std::uint64_t get_uint64(const std::string& key) const;
    bool get_bool(const std::string& key) const;  // true/false/1/0

    // Defaulted accessors fall back when the key is absent.
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Comma-separated list of doubles, e.g. "0.0625, 0.125".
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<long long> get_int_list(const std::string& key) const;

    std::vector<std::string> keys() const;

    /// Throws when any stored key lies outside `allowed`; error names it.
    void require_known_keys(const std::vector<std::string>& allowed) const;

    std::string serialize() const;

private:
    std::map<std::string, std::string> values_;
    std::string origin_ = "<empty>";

    const std::string& raw(const std::string& key) const;
};

}  // namespace ghostsim
