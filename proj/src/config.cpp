#include "ghostsim/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ghostsim {
namespace {

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
        if (!ok) return false;
    }
    return true;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw std::invalid_argument(os.str());
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected `key = value`");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (!valid_key(key))
            fail(origin, lineno, "key `" + key + "` must match [a-z0-9_.]+");
        if (value.empty()) fail(origin, lineno, "value for `" + key + "` is empty");
        if (cfg.values_.count(key)) fail(origin, lineno, "duplicate key `" + key + "`");
        cfg.values_[key] = value;
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

bool Config::has(const std::string& key) const { return values_.count(key) != 0; }

void Config::set(const std::string& key, const std::string& value) {
    if (!valid_key(key)) throw std::invalid_argument("config key `" + key + "` is invalid");
    values_[key] = value;
}

const std::string& Config::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw std::invalid_argument(origin_ + ": missing required key `" + key + "`");
    return it->second;
}

std::string Config::get_string(const std::string& key) const { return raw(key); }

double Config::get_double(const std::string& key) const {
    const std::string& v = raw(key);
    errno = 0;
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        throw std::invalid_argument(origin_ + ": key `" + key + "` is not a number: " + v);
    return d;
}

long long Config::get_int(const std::string& key) const {
    const std::string& v = raw(key);
    errno = 0;
    char* end = nullptr;
    const long long i = std::strtoll(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        throw std::invalid_argument(origin_ + ": key `" + key + "` is not an integer: " + v);
    return i;
}

std::uint64_t Config::get_uint64(const std::string& key) const {
    const std::string& v = raw(key);
    errno = 0;
    char* end = nullptr;
    const unsigned long long i = std::strtoull(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0' || v[0] == '-')
        throw std::invalid_argument(origin_ + ": key `" + key +
                                    "` is not an unsigned integer: " + v);
    return i;
}

bool Config::get_bool(const std::string& key) const {
    const std::string& v = raw(key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument(origin_ + ": key `" + key + "` is not a boolean: " + v);
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}
double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}
long long Config::get_int(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}
std::uint64_t Config::get_uint64(const std::string& key, std::uint64_t fallback) const {
    return has(key) ? get_uint64(key) : fallback;
}
bool Config::get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    const std::string& v = raw(key);
    std::vector<double> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        if (t.empty())
            throw std::invalid_argument(origin_ + ": key `" + key + "` has an empty list item");
        errno = 0;
        char* end = nullptr;
        const double d = std::strtod(t.c_str(), &end);
        if (errno != 0 || end == t.c_str() || *end != '\0')
            throw std::invalid_argument(origin_ + ": key `" + key + "` has a non-numeric item: " +
                                        t);
        out.push_back(d);
    }
    if (out.empty()) throw std::invalid_argument(origin_ + ": key `" + key + "` is empty");
    return out;
}

std::vector<long long> Config::get_int_list(const std::string& key) const {
    const std::vector<double> d = get_double_list(key);
    std::vector<long long> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        out[i] = static_cast<long long>(d[i]);
        if (double(out[i]) != d[i])
            throw std::invalid_argument(origin_ + ": key `" + key + "` has a non-integer item");
    }
    return out;
}

std::vector<std::string> Config::keys() const {
    std::vector<std::string> out;
    out.reserve(values_.size());
    for (const auto& kv : values_) out.push_back(kv.first);
    return out;
}

void Config::require_known_keys(const std::vector<std::string>& allowed) const {
    for (const auto& kv : values_) {
        if (std::find(allowed.begin(), allowed.end(), kv.first) == allowed.end())
            throw std::invalid_argument(origin_ + ": unknown key `" + kv.first + "`");
    }
}

std::string Config::serialize() const {
    std::ostringstream os;
    for (const auto& kv : values_) os << kv.first << " = " << kv.second << "\n";
    return os.str();
}

}  // namespace ghostsim
