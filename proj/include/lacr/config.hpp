#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace lacr {

// Layered lookup: command-line flags > environment > config file > default.
// Keys are dotted lower-case ("pc.alpha"); the environment variable name is
// the prefix plus the upper-cased key with separators turned into
// underscores (LACR_PC_ALPHA).
class ConfigResolver {
public:
    using EnvLookup = std::function<const char*(const char*)>;

    ConfigResolver(std::map<std::string, std::string> cli_values, std::string env_prefix,
                   nlohmann::json file_config, EnvLookup env = nullptr);

    static ConfigResolver from_file(const std::string& path, std::string env_prefix = "LACR_");

    std::optional<std::string> lookup(const std::string& key) const;
    std::string resolve(const std::string& key, const std::string& fallback) const;
    double resolve_double(const std::string& key, double fallback) const;
    int resolve_int(const std::string& key, int fallback) const;
    bool resolve_bool(const std::string& key, bool fallback) const;

    void set_cli(const std::string& key, const std::string& value) { cli_values_[key] = value; }

    static std::string env_name(const std::string& prefix, const std::string& key);

private:
    std::map<std::string, std::string> cli_values_;
    std::string env_prefix_;
    nlohmann::json file_config_;
    EnvLookup env_;
};

}  // namespace lacr
