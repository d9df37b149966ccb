#pragma once

#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lacr/chat.hpp"

namespace lacr {

std::string sha256_hex(std::string_view data);

// Digest of (model, sampling parameters, full prompt sequence). Unrelated
// configuration never feeds the key.
std::string cache_key(const ClientParams& params, const std::vector<Turn>& turns);

// Append-only JSON-lines response store. Corrupt lines are skipped with a
// warning and recomputed on demand. Entries are written with a single append
// so concurrent writers interleave whole records.
class ResponseCache {
public:
    explicit ResponseCache(std::string path);

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& response);

    std::size_t size() const;
    const std::string& path() const { return path_; }

private:
    std::string path_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, std::string> entries_;
};

// Serves cached responses and forwards misses to the wrapped client.
class CachingClient : public ChatClient {
public:
    CachingClient(ChatClient& inner, ResponseCache& cache) : inner_(&inner), cache_(&cache) {}

    std::string complete(const std::vector<Turn>& turns, const ClientParams& params,
                         const CallRoute& route) override {
        const std::string key = cache_key(params, turns);
        if (auto hit = cache_->get(key)) return *hit;
        std::string response = inner_->complete(turns, params, route);
        cache_->put(key, response);
        return response;
    }

private:
    ChatClient* inner_;
    ResponseCache* cache_;
};

}  // namespace lacr
