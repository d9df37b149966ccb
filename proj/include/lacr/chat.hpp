#pragma once

#include <atomic>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lacr {

struct Turn {
    std::string role;  // "user" | "assistant"
    std::string text;
};

struct ClientParams {
    std::string model = "offline-mock";
    double temperature = 0.0;  // fixed for reproducibility
    int max_output_tokens = 2048;
};

// Routing metadata for scripted clients; live clients ignore it and it never
// reaches prompts or cache keys.
struct CallRoute {
    std::string pair_key;  // "<factorA>|<factorB>" in canonical order
    std::string kb_id;     // "BG" or document id
    std::string stage;     // background | association | type | recheck |
                           // orientation_background | orientation
};

class TransportError : public std::runtime_error {
public:
    explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

class ChatClient {
public:
    virtual ~ChatClient() = default;
    virtual std::string complete(const std::vector<Turn>& turns, const ClientParams& params,
                                 const CallRoute& route) = 0;
};

// Canned responses from a JSON script:
//   {"<pair>": {"<kb id>": {"<stage>": "response text"}}}
// Background stages fall back to an acknowledgement since their output is
// never parsed.
class ScriptedClient : public ChatClient {
public:
    explicit ScriptedClient(nlohmann::json script);
    static ScriptedClient from_file(const std::string& path);

    std::string complete(const std::vector<Turn>& turns, const ClientParams& params,
                         const CallRoute& route) override;

private:
    nlohmann::json script_;
};

// Pass-through wrapper counting inner calls.
class CountingClient : public ChatClient {
public:
    explicit CountingClient(ChatClient& inner) : inner_(&inner) {}

    std::string complete(const std::vector<Turn>& turns, const ClientParams& params,
                         const CallRoute& route) override {
        calls_.fetch_add(1, std::memory_order_relaxed);
        return inner_->complete(turns, params, route);
    }

    long calls() const { return calls_.load(std::memory_order_relaxed); }
    void reset() { calls_.store(0, std::memory_order_relaxed); }

private:
    ChatClient* inner_;
    std::atomic<long> calls_{0};
};

// Chat-completion client over HTTP. Endpoint and key come from the
// environment (LACR_LLM_ENDPOINT, LACR_LLM_API_KEY).
class HttpChatClient : public ChatClient {
public:
    HttpChatClient(std::string endpoint, std::string api_key);
    static HttpChatClient from_env();

    std::string complete(const std::vector<Turn>& turns, const ClientParams& params,
                         const CallRoute& route) override;

private:
    std::string endpoint_;
    std::string api_key_;
};

}  // namespace lacr
