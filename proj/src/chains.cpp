#include "lacr/chains.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "lacr/cache.hpp"
#include "lacr/ground_truth.hpp"

namespace lacr {

void Transcript::append(const std::string& role, const std::string& text) {
    if (role != "user" && role != "assistant")
        throw std::invalid_argument("transcript role must be user or assistant");
    if (!turns.empty() && turns.back().role == role)
        throw std::invalid_argument("transcript turns must alternate");
    if (turns.empty() && role != "user")
        throw std::invalid_argument("transcript must start with a user turn");
    turns.push_back({role, text});
}

std::string pair_key(const std::string& factor_a, const std::string& factor_b) {
    return factor_a + "|" + factor_b;
}

namespace {

constexpr const char* kReformatRequest = "Respond in the expected format.";

std::string chomp(std::string text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

struct Exchange {
    ChatClient* client;
    const ChainConfig* config;
    Transcript* transcript;
    CallRoute route;
    std::vector<std::string>* flags;

    // One user/assistant exchange with transport retries; nullopt after the
    // last failed attempt.
    std::optional<std::string> ask(const std::string& stage, const std::string& user_text) {
        route.stage = stage;
        std::vector<Turn> turns = transcript->turns;
        turns.push_back({"user", user_text});
        for (int attempt = 1; attempt <= config->transport_attempts; ++attempt) {
            try {
                std::string response = client->complete(turns, config->client, route);
                transcript->append("user", user_text);
                transcript->append("assistant", response);
                transcript->cache_keys.push_back(cache_key(config->client, turns));
                return response;
            } catch (const TransportError& e) {
                if (attempt == config->transport_attempts)
                    flags->push_back(std::string("client-error: ") + e.what());
            }
        }
        return std::nullopt;
    }
};

void check_pair_in_factors(const std::string& factor_a, const std::string& factor_b,
                           const std::vector<std::string>& all_factors) {
    if (factor_a == factor_b) throw std::invalid_argument("pair factors must differ");
    for (const auto& f : {factor_a, factor_b}) {
        if (std::find(all_factors.begin(), all_factors.end(), f) == all_factors.end())
            throw std::invalid_argument("pair factor '" + f + "' is not in the factor list");
    }
}

std::string truncate_document(const KnowledgeBase& kb, std::size_t budget,
                              std::vector<std::string>* flags) {
    if (kb.text.size() <= budget) return kb.text;
    flags->push_back("document-truncated");
    return kb.text.substr(0, budget) + "\n[truncated]";
}

}  // namespace

CcChainResult cc_chain(ChatClient& client, const PromptLibrary& prompts, const KnowledgeBase& kb,
                       const std::string& factor_a, const std::string& factor_b,
                       const std::vector<std::string>& all_factors, const std::string& domain,
                       const ChainConfig& config) {
    check_pair_in_factors(factor_a, factor_b, all_factors);

    CcChainResult result;
    result.transcript.model = config.client.model;
    result.transcript.temperature = config.client.temperature;
    result.transcript.max_output_tokens = config.client.max_output_tokens;
    Verdict& verdict = result.verdict;

    Exchange exchange{&client, &config, &result.transcript,
                      CallRoute{pair_key(factor_a, factor_b), kb.label(), ""}, &verdict.flags};

    const std::string factors_joined = join_names(all_factors);
    std::vector<std::string> third_factors;
    for (const auto& f : all_factors)
        if (f != factor_a && f != factor_b) third_factors.push_back(f);

    // Stage 1: background reminder. The reply primes context; it is never
    // parsed.
    const std::string reminder = prompts.get("association_background_reminder")
                                     .render({{"domain", domain}, {"factors", factors_joined}});
    if (!exchange.ask("background", reminder)) return result;
    result.stages = 1;

    // Stage 2: association verifier.
    std::map<std::string, std::string> bindings = {
        {"factorA", factor_a},
        {"factorB", factor_b},
        {"association_context", chomp(prompts.get("association_context").text())}};
    std::string query;
    if (kb.is_background()) {
        query = prompts.get("association_query_bg").render(bindings);
    } else {
        bindings["document"] = truncate_document(kb, config.document_char_budget, &verdict.flags);
        query = prompts.get("association_query_doc").render(bindings);
    }
    auto response = exchange.ask("association", query);
    if (!response) return result;
    result.stages = 2;

    AssociationAnswer association = parse_association_answer(*response);
    if (!association.parse_ok) {
        if (auto retry = exchange.ask("association_retry", kReformatRequest))
            association = parse_association_answer(*retry);
        if (!association.parse_ok) {
            verdict.flags.push_back("parse-failure: association");
            return result;  // UNKNOWN
        }
    }
    if (association.value == Association::kUnknown) return result;
    if (association.value == Association::kIndependent) {
        verdict.value = VerdictValue::kIndependent;
        verdict.reference = association.reference;
        return result;
    }

    // Stage 3: association type verifier.
    std::map<std::string, std::string> type_bindings = {
        {"factorA", factor_a},
        {"factorB", factor_b},
        {"factors", factors_joined},
        {"association_type_context", chomp(prompts.get("association_type_context").text())}};
    const std::string type_template =
        kb.is_background() ? "association_type_query_bg" : "association_type_query_doc";
    response = exchange.ask("type", prompts.get(type_template).render(type_bindings));
    if (!response) return result;
    result.stages = 3;

    TypeAnswer type = parse_type_answer(*response, third_factors);
    if (!type.parse_ok) {
        if (auto retry = exchange.ask("type_retry", kReformatRequest))
            type = parse_type_answer(*retry, third_factors);
        if (!type.parse_ok) {
            verdict.flags.push_back("parse-failure: type");
            return result;
        }
    }
    if (type.value == AssociationType::kUnknown) return result;

    // Stage 4: rechecker, only for INDIRECT with no in-scope intermediary —
    // mediation by external variables must be corrected to direct.
    if (type.value == AssociationType::kIndirect && type.matched_intermediaries.empty()) {
        const std::string recheck =
            prompts.get("rethink_query")
                .render({{"factorA", factor_a}, {"factorB", factor_b}, {"factors", factors_joined}});
        response = exchange.ask("recheck", recheck);
        if (!response) return result;
        result.stages = 4;

        type = parse_type_answer(*response, third_factors);
        if (!type.parse_ok) {
            if (auto retry = exchange.ask("recheck_retry", kReformatRequest))
                type = parse_type_answer(*retry, third_factors);
            if (!type.parse_ok) {
                verdict.flags.push_back("parse-failure: recheck");
                return result;
            }
        }
        if (type.value == AssociationType::kUnknown) return result;
    }

    if (type.value == AssociationType::kDirect) {
        verdict.value = VerdictValue::kDirectlyAssociated;
    } else {
        verdict.value = VerdictValue::kIndirectlyAssociated;
        verdict.intermediaries = type.matched_intermediaries;
    }
    verdict.reference = type.reference;
    return result;
}

OrientationChainResult orientation_chain(ChatClient& client, const PromptLibrary& prompts,
                                         const KnowledgeBase& kb, const std::string& factor_a,
                                         const std::string& factor_b, const std::string& domain,
                                         const ChainConfig& config) {
    if (factor_a == factor_b) throw std::invalid_argument("pair factors must differ");

    OrientationChainResult result;
    result.transcript.model = config.client.model;
    result.transcript.temperature = config.client.temperature;
    result.transcript.max_output_tokens = config.client.max_output_tokens;
    OrientationVerdict& verdict = result.verdict;

    Exchange exchange{&client, &config, &result.transcript,
                      CallRoute{pair_key(factor_a, factor_b), kb.label(), ""}, &verdict.flags};

    const std::string reminder =
        prompts.get("causal_background_reminder")
            .render({{"domain", domain}, {"factorA", factor_a}, {"factorB", factor_b}});
    if (!exchange.ask("orientation_background", reminder)) return result;
    result.stages = 1;

    std::map<std::string, std::string> bindings = {
        {"factorA", factor_a},
        {"factorB", factor_b},
        {"causal_direction_context", chomp(prompts.get("causal_direction_context").text())}};
    std::string query;
    if (kb.is_background()) {
        query = prompts.get("causal_direction_query_bg").render(bindings);
    } else {
        bindings["document"] = truncate_document(kb, config.document_char_budget, &verdict.flags);
        query = prompts.get("causal_direction_query_doc").render(bindings);
    }
    auto response = exchange.ask("orientation", query);
    if (!response) return result;
    result.stages = 2;

    DirectionAnswer direction = parse_direction_answer(*response);
    bool needs_retry = !direction.parse_ok;
    // Document evidence must quote its support.
    if (!needs_retry && !kb.is_background() && direction.value != Direction::kUnknown &&
        direction.reference.empty())
        needs_retry = true;

    if (needs_retry) {
        if (auto retry = exchange.ask("orientation_retry", kReformatRequest))
            direction = parse_direction_answer(*retry);
        if (!direction.parse_ok) {
            verdict.flags.push_back("parse-failure: orientation");
            return result;
        }
        if (!kb.is_background() && direction.value != Direction::kUnknown &&
            direction.reference.empty()) {
            verdict.flags.push_back("missing-reference");
            return result;  // UNKNOWN
        }
    }

    verdict.value = direction.value;
    verdict.reference = direction.reference;
    return result;
}

}  // namespace lacr
