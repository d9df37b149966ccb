#pragma once

#include <string>
#include <vector>

#include "lacr/chat.hpp"
#include "lacr/kb.hpp"
#include "lacr/prompt.hpp"
#include "lacr/verdict.hpp"

namespace lacr {

struct ChainConfig {
    ClientParams client;
    std::size_t document_char_budget = 24000;  // tail-first truncation beyond this
    int transport_attempts = 3;
};

// Ordered exchange with the client; append-only and strictly alternating.
struct Transcript {
    std::string model;
    double temperature = 0.0;
    int max_output_tokens = 0;
    std::vector<Turn> turns;
    std::vector<std::string> cache_keys;  // one per client call

    void append(const std::string& role, const std::string& text);
};

struct CcChainResult {
    Verdict verdict;
    Transcript transcript;
    int stages = 0;  // completed chain stages (2..4 on a clean run)
};

struct OrientationChainResult {
    OrientationVerdict verdict;
    Transcript transcript;
    int stages = 0;
};

// Up to four exchanges per (pair, KB): background reminder, association
// verifier (INDEPENDENT/UNKNOWN end the chain), association type verifier,
// and the rechecker, which fires only when the type stage returned INDIRECT
// without an in-scope intermediary. UNKNOWN at any stage marks the KB
// unusable for the pair.
CcChainResult cc_chain(ChatClient& client, const PromptLibrary& prompts, const KnowledgeBase& kb,
                       const std::string& factor_a, const std::string& factor_b,
                       const std::vector<std::string>& all_factors, const std::string& domain,
                       const ChainConfig& config);

// Two exchanges: background reminder, then the orienting query. A document
// KB must back a non-UNKNOWN answer with a reference sentence.
OrientationChainResult orientation_chain(ChatClient& client, const PromptLibrary& prompts,
                                         const KnowledgeBase& kb, const std::string& factor_a,
                                         const std::string& factor_b, const std::string& domain,
                                         const ChainConfig& config);

std::string pair_key(const std::string& factor_a, const std::string& factor_b);

}  // namespace lacr
