#include "lacr/cache.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <openssl/evp.h>

namespace lacr {

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr))
        throw std::runtime_error("SHA-256 digest failed");
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int k = 0; k < length; ++k) {
        out.push_back(hex[digest[k] >> 4]);
        out.push_back(hex[digest[k] & 0xF]);
    }
    return out;
}

std::string cache_key(const ClientParams& params, const std::vector<Turn>& turns) {
    nlohmann::json payload = {{"model", params.model},
                              {"temperature", params.temperature},
                              {"max_output_tokens", params.max_output_tokens}};
    nlohmann::json sequence = nlohmann::json::array();
    for (const auto& turn : turns) sequence.push_back({{"role", turn.role}, {"text", turn.text}});
    payload["turns"] = sequence;
    return sha256_hex(payload.dump());
}

ResponseCache::ResponseCache(std::string path) : path_(std::move(path)) {
    const auto parent = std::filesystem::path(path_).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ifstream in(path_);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        try {
            nlohmann::json entry = nlohmann::json::parse(line);
            entries_[entry.at("key").get<std::string>()] =
                entry.at("response").get<std::string>();
        } catch (const std::exception& e) {
            std::cerr << "warning: ignoring corrupt cache entry at " << path_ << ":"
                      << line_number << " (" << e.what() << ")\n";
        }
    }
}

std::optional<std::string> ResponseCache::get(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ResponseCache::put(const std::string& key, const std::string& response) {
    const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::system_clock::now().time_since_epoch())
                         .count();
    const nlohmann::json entry = {
        {"key", key}, {"created_at_ms", now}, {"response", response}};
    const std::string line = entry.dump() + "\n";

    std::lock_guard<std::mutex> lock(mutex_);
    entries_[key] = response;
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.flush();
}

std::size_t ResponseCache::size() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.size();
}

}  // namespace lacr
