#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lacr/chains.hpp"
#include "lacr/graph.hpp"
#include "lacr/ground_truth.hpp"
#include "lacr/pc.hpp"
#include "lacr/verdict.hpp"

namespace lacr {

// DIRECTLY_ASSOCIATED→1, INDEPENDENT/INDIRECTLY_ASSOCIATED→0, UNKNOWN→absent.
std::optional<int> verdict_to_zeta(const Verdict& verdict);

struct Vote {
    std::string source;  // "BG", "doc:<id>", "PC"
    int value = 0;       // +1, -1; 0 only for UNKNOWN/unusable sources
    std::string verdict;
    int stages = 0;
    std::vector<std::string> flags;
    std::vector<std::string> transcript_keys;  // cache keys of the chain calls
};

struct PairScore {
    std::pair<std::string, std::string> names;  // canonical order
    Edge pair{-1, -1};
    std::vector<Vote> votes;
    int score = 0;  // always the sum of vote values
    bool kept = false;
    std::vector<std::string> flags;
};

struct ScoreLedger {
    std::vector<PairScore> entries;  // canonical pair order

    const PairScore& entry(int a, int b) const;
};

// Per-KB verdict evidence for one pair, chain provenance attached.
struct PairEvidence {
    std::string kb_label;
    Verdict verdict;
    int stages = 0;
    std::vector<std::string> transcript_keys;
};

struct LacrOneResult {
    Skeleton skeleton;
    ScoreLedger ledger;
};

// Algorithm: start from the complete skeleton; per pair sum +1 for zeta=1,
// -1 for zeta=0, 0 for UNKNOWN, plus the PC vote when injected; remove the
// edge iff the score ends <= 0.
LacrOneResult lacr1(const std::vector<std::string>& variables,
                    const std::map<Edge, std::vector<PairEvidence>>& evidence,
                    const PcResult* pc_result = nullptr, int pc_weight = 1);

struct OrientationEvidence {
    std::string kb_label;
    OrientationVerdict verdict;
};

struct EdgeOrientation {
    Edge edge{-1, -1};
    std::pair<std::string, std::string> names;
    std::optional<std::pair<int, int>> direction;  // accepted arrow, if any
    int votes_forward = 0;   // smaller-index factor causes the larger
    int votes_backward = 0;
    int margin = 0;
    std::string decided_by;  // "majority" | "background-tiebreak" | ""
    bool demoted = false;    // dropped by the acyclicity pass
    std::vector<OrientationEvidence> evidence;
};

struct LacrTwoResult {
    std::vector<std::pair<int, int>> accepted;  // acyclic after demotion
    std::vector<Edge> unresolved;
    std::vector<EdgeOrientation> edges;
    std::vector<std::string> conflicts;
};

// Per edge: majority of non-UNKNOWN orientation verdicts, BACKGROUND breaking
// ties; cycles are broken by demoting the lowest-margin edge on the cycle.
LacrTwoResult lacr2(const Skeleton& skeleton,
                    const std::map<Edge, std::vector<OrientationEvidence>>& evidence);

struct RecoveryConfig {
    std::string dataset = "ASIA";
    std::string variant = "original";
    bool use_background = true;
    bool use_documents = false;
    bool use_pc = false;
    int document_cap = 10;
    int pc_weight = 1;
    double alpha = 0.05;
    int max_order = 3;
    bool skeleton_only = false;
    int jobs = 1;
    ClientParams client;
    std::size_t document_char_budget = 24000;
    std::string domain_override;  // empty: registry domains

    nlohmann::json to_json() const;
};

struct PipelineEnv {
    ChatClient* client = nullptr;
    const GroundTruthRegistry* registry = nullptr;
    const PromptLibrary* prompts = nullptr;
    std::string corpus_dir;   // required when documents are enabled
    std::string data_csv;     // required when PC is enabled
    std::string run_dir;      // outputs; empty: nothing persisted
    std::string cache_file;   // default <run_dir>/cache.jsonl
};

struct RecoveryReport {
    std::string dataset;
    std::string variant;
    nlohmann::json config;
    Skeleton skeleton;
    std::vector<std::pair<int, int>> directed;  // accepted orientation
    std::vector<Edge> unresolved;
    ScoreLedger ledger;
    std::vector<EdgeOrientation> orientation;
    std::vector<std::string> flags;
    std::vector<std::string> partial_failures;  // pairs that errored out

    nlohmann::json to_json() const;
    CausalGraph digraph() const;  // accepted arrows over the variable set
};

// lacr1 + lacr2 over the configured knowledge bases; persists report.json,
// ledger-backed provenance, and DOT exports under run_dir.
RecoveryReport run_pipeline(const RecoveryConfig& config, const PipelineEnv& env);

// Rehydrates a persisted report.json.
RecoveryReport report_from_json(const nlohmann::json& value);

}  // namespace lacr
