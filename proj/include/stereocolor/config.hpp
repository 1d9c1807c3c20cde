#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace stereocolor {

/// Flat `key = value` settings. Keys are namespaced by module, e.g. `idt.bins`.
/// Blank lines and lines starting with '#' are ignored.
class Config {
public:
    static Config parse(std::string_view text);
    /// Throws IoError if unreadable.
    static Config load(const std::filesystem::path& path);

    void set(const std::string& key, std::string value) { values_[key] = std::move(value); }
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::optional<std::string> get(const std::string& key) const;

    std::string get_string(const std::string& key, const std::string& fallback) const;
    /// Throws InvalidArgument when the value is present but malformed.
    double get_double(const std::string& key, double fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
/// Strict double parse of the whole string. Throws InvalidArgument.
double parse_double(std::string_view s);

}  // namespace stereocolor
