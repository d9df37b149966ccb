#include "lacr/chat.hpp"

#include <cstdlib>
#include <fstream>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

namespace lacr {

ScriptedClient::ScriptedClient(nlohmann::json script) : script_(std::move(script)) {}

ScriptedClient ScriptedClient::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open mock script: " + path);
    return ScriptedClient(nlohmann::json::parse(in));
}

std::string ScriptedClient::complete(const std::vector<Turn>&, const ClientParams&,
                                     const CallRoute& route) {
    std::string stage = route.stage;
    // A retry stage falls back to the original stage's canned response.
    const std::string retry_suffix = "_retry";
    if (stage.size() > retry_suffix.size() &&
        stage.compare(stage.size() - retry_suffix.size(), retry_suffix.size(), retry_suffix) == 0) {
        const std::string base = stage.substr(0, stage.size() - retry_suffix.size());
        const auto pair_it = script_.find(route.pair_key);
        if (pair_it != script_.end()) {
            const auto kb_it = pair_it->find(route.kb_id);
            if (kb_it != pair_it->end() && !kb_it->contains(stage) && kb_it->contains(base))
                stage = base;
        }
    }
    const auto pair_it = script_.find(route.pair_key);
    if (pair_it != script_.end()) {
        const auto kb_it = pair_it->find(route.kb_id);
        if (kb_it != pair_it->end()) {
            const auto stage_it = kb_it->find(stage);
            if (stage_it != kb_it->end()) return stage_it->get<std::string>();
        }
    }
    if (route.stage == "background" || route.stage == "orientation_background")
        return "Acknowledged.";
    throw std::out_of_range("mock script has no response for pair '" + route.pair_key +
                            "', kb '" + route.kb_id + "', stage '" + route.stage + "'");
}

HttpChatClient::HttpChatClient(std::string endpoint, std::string api_key)
    : endpoint_(std::move(endpoint)), api_key_(std::move(api_key)) {}

HttpChatClient HttpChatClient::from_env() {
    const char* endpoint = std::getenv("LACR_LLM_ENDPOINT");
    const char* key = std::getenv("LACR_LLM_API_KEY");
    if (!endpoint || !*endpoint)
        throw std::runtime_error(
            "LACR_LLM_ENDPOINT is not set; use --mock for offline runs or export the endpoint");
    return HttpChatClient(endpoint, key ? key : "");
}

std::string HttpChatClient::complete(const std::vector<Turn>& turns, const ClientParams& params,
                                     const CallRoute&) {
    nlohmann::json messages = nlohmann::json::array();
    for (const auto& turn : turns) messages.push_back({{"role", turn.role}, {"content", turn.text}});
    const nlohmann::json body = {{"model", params.model},
                                 {"temperature", params.temperature},
                                 {"max_tokens", params.max_output_tokens},
                                 {"messages", messages}};

    httplib::Client client(endpoint_);
    client.set_read_timeout(120, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);

    auto res = client.Post("/v1/chat/completions", headers, body.dump(), "application/json");
    if (!res) throw TransportError("chat endpoint unreachable: " + httplib::to_string(res.error()));
    if (res->status != 200)
        throw TransportError("chat endpoint returned status " + std::to_string(res->status));
    const nlohmann::json reply = nlohmann::json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
}

}  // namespace lacr
