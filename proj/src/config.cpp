#include "lacr/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lacr {

ConfigResolver::ConfigResolver(std::map<std::string, std::string> cli_values,
                               std::string env_prefix, nlohmann::json file_config, EnvLookup env)
    : cli_values_(std::move(cli_values)),
      env_prefix_(std::move(env_prefix)),
      file_config_(std::move(file_config)),
      env_(env ? std::move(env) : [](const char* name) { return std::getenv(name); }) {}

ConfigResolver ConfigResolver::from_file(const std::string& path, std::string env_prefix) {
    nlohmann::json file_config = nlohmann::json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        file_config = nlohmann::json::parse(in);
    }
    return ConfigResolver({}, std::move(env_prefix), std::move(file_config));
}

std::string ConfigResolver::env_name(const std::string& prefix, const std::string& key) {
    std::string out = prefix;
    for (char c : key) {
        if (c == '.' || c == '-') out.push_back('_');
        else out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return out;
}

std::optional<std::string> ConfigResolver::lookup(const std::string& key) const {
    if (auto it = cli_values_.find(key); it != cli_values_.end()) return it->second;

    if (const char* value = env_(env_name(env_prefix_, key).c_str()); value && *value)
        return std::string(value);

    // Dotted path into the config file tree.
    const nlohmann::json* node = &file_config_;
    std::istringstream segments(key);
    std::string segment;
    bool found = true;
    while (std::getline(segments, segment, '.')) {
        if (node->is_object() && node->contains(segment)) {
            node = &node->at(segment);
        } else {
            found = false;
            break;
        }
    }
    if (found && !node->is_object() && !node->is_null()) {
        if (node->is_string()) return node->get<std::string>();
        return node->dump();
    }
    return std::nullopt;
}

std::string ConfigResolver::resolve(const std::string& key, const std::string& fallback) const {
    return lookup(key).value_or(fallback);
}

double ConfigResolver::resolve_double(const std::string& key, double fallback) const {
    auto value = lookup(key);
    if (!value) return fallback;
    try {
        return std::stod(*value);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "' is not a number: " + *value);
    }
}

int ConfigResolver::resolve_int(const std::string& key, int fallback) const {
    auto value = lookup(key);
    if (!value) return fallback;
    try {
        return std::stoi(*value);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "' is not an integer: " + *value);
    }
}

bool ConfigResolver::resolve_bool(const std::string& key, bool fallback) const {
    auto value = lookup(key);
    if (!value) return fallback;
    if (*value == "true" || *value == "1" || *value == "yes" || *value == "on") return true;
    if (*value == "false" || *value == "0" || *value == "no" || *value == "off") return false;
    throw std::invalid_argument("config key '" + key + "' is not a boolean: " + *value);
}

}  // namespace lacr
