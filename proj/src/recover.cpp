#include "lacr/recover.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "lacr/cache.hpp"
#include "lacr/graph_io.hpp"
#include "lacr/retrieval.hpp"

namespace lacr {

std::optional<int> verdict_to_zeta(const Verdict& verdict) {
    switch (verdict.value) {
        case VerdictValue::kDirectlyAssociated: return 1;
        case VerdictValue::kIndependent: return 0;
        case VerdictValue::kIndirectlyAssociated: return 0;
        case VerdictValue::kUnknown: return std::nullopt;
    }
    return std::nullopt;
}

const PairScore& ScoreLedger::entry(int a, int b) const {
    const Edge e = make_edge(a, b);
    for (const auto& entry : entries)
        if (entry.pair == e) return entry;
    throw std::out_of_range("ledger has no entry for pair (" + std::to_string(a) + ", " +
                            std::to_string(b) + ")");
}

LacrOneResult lacr1(const std::vector<std::string>& variables,
                    const std::map<Edge, std::vector<PairEvidence>>& evidence,
                    const PcResult* pc_result, int pc_weight) {
    Skeleton skeleton = Skeleton::complete(variables);
    ScoreLedger ledger;

    const int n = static_cast<int>(variables.size());
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            PairScore entry;
            entry.pair = {a, b};
            entry.names = {variables[a], variables[b]};

            auto it = evidence.find(entry.pair);
            if (it != evidence.end()) {
                for (const auto& ev : it->second) {
                    Vote vote;
                    vote.source = ev.kb_label;
                    vote.verdict = to_string(ev.verdict.value);
                    vote.stages = ev.stages;
                    vote.flags = ev.verdict.flags;
                    vote.transcript_keys = ev.transcript_keys;
                    if (auto zeta = verdict_to_zeta(ev.verdict)) vote.value = *zeta == 1 ? 1 : -1;
                    entry.votes.push_back(std::move(vote));
                }
            }
            if (pc_result) {
                Vote vote;
                vote.source = "PC";
                const int direction = pc_vote(*pc_result, a, b);
                vote.value = direction * pc_weight;
                vote.verdict = direction > 0 ? "edge-kept" : "edge-removed";
                entry.votes.push_back(std::move(vote));
            }

            for (const auto& vote : entry.votes) entry.score += vote.value;
            entry.kept = entry.score > 0;

            const bool any_usable = std::any_of(entry.votes.begin(), entry.votes.end(),
                                                [](const Vote& v) { return v.value != 0; });
            if (!any_usable) entry.flags.push_back("decided-by-default-bias");

            if (!entry.kept) skeleton = skeleton.without_edge(a, b);
            ledger.entries.push_back(std::move(entry));
        }
    }
    return {std::move(skeleton), std::move(ledger)};
}

namespace {

// Any directed cycle in the accepted arrows, as a list of arrows on it.
std::optional<std::vector<std::pair<int, int>>> find_cycle(
    int n, const std::vector<std::pair<int, int>>& arrows) {
    std::vector<std::vector<int>> adjacency(n);
    for (const auto& [from, to] : arrows) adjacency[from].push_back(to);

    std::vector<int> state(n, 0);  // 0 unseen, 1 on stack, 2 done
    std::vector<int> stack;
    std::optional<std::vector<int>> cycle_nodes;

    std::function<bool(int)> dfs = [&](int v) {
        state[v] = 1;
        stack.push_back(v);
        for (int next : adjacency[v]) {
            if (state[next] == 1) {
                auto it = std::find(stack.begin(), stack.end(), next);
                cycle_nodes = std::vector<int>(it, stack.end());
                return true;
            }
            if (state[next] == 0 && dfs(next)) return true;
        }
        stack.pop_back();
        state[v] = 2;
        return false;
    };
    for (int v = 0; v < n && !cycle_nodes; ++v)
        if (state[v] == 0) dfs(v);
    if (!cycle_nodes) return std::nullopt;

    std::vector<std::pair<int, int>> cycle_arrows;
    for (std::size_t k = 0; k < cycle_nodes->size(); ++k) {
        const int from = (*cycle_nodes)[k];
        const int to = (*cycle_nodes)[(k + 1) % cycle_nodes->size()];
        cycle_arrows.emplace_back(from, to);
    }
    return cycle_arrows;
}

}  // namespace

LacrTwoResult lacr2(const Skeleton& skeleton,
                    const std::map<Edge, std::vector<OrientationEvidence>>& evidence) {
    LacrTwoResult result;

    for (const auto& edge : skeleton.edges()) {
        EdgeOrientation record;
        record.edge = edge;
        record.names = {skeleton.name_of(edge.first), skeleton.name_of(edge.second)};

        auto it = evidence.find(edge);
        if (it != evidence.end()) record.evidence = it->second;

        std::optional<Direction> background_vote;
        for (const auto& ev : record.evidence) {
            if (ev.verdict.value == Direction::kACausesB) ++record.votes_forward;
            else if (ev.verdict.value == Direction::kBCausesA) ++record.votes_backward;
            if (ev.kb_label == "BG" && ev.verdict.usable()) background_vote = ev.verdict.value;
        }

        if (record.votes_forward > record.votes_backward) {
            record.direction = {edge.first, edge.second};
            record.decided_by = "majority";
        } else if (record.votes_backward > record.votes_forward) {
            record.direction = {edge.second, edge.first};
            record.decided_by = "majority";
        } else if (record.votes_forward > 0 && background_vote) {
            record.direction = *background_vote == Direction::kACausesB
                                   ? std::make_pair(edge.first, edge.second)
                                   : std::make_pair(edge.second, edge.first);
            record.decided_by = "background-tiebreak";
        }
        record.margin = std::abs(record.votes_forward - record.votes_backward);
        result.edges.push_back(std::move(record));
    }

    // Acyclicity pass: demote the weakest-margin arrow on each detected cycle.
    const int n = skeleton.variable_count();
    while (true) {
        std::vector<std::pair<int, int>> accepted;
        for (const auto& record : result.edges)
            if (record.direction && !record.demoted) accepted.push_back(*record.direction);
        auto cycle = find_cycle(n, accepted);
        if (!cycle) break;

        EdgeOrientation* weakest = nullptr;
        for (auto& record : result.edges) {
            if (!record.direction || record.demoted) continue;
            const bool on_cycle =
                std::find(cycle->begin(), cycle->end(), *record.direction) != cycle->end();
            if (!on_cycle) continue;
            if (!weakest || record.margin < weakest->margin ||
                (record.margin == weakest->margin && record.edge < weakest->edge))
                weakest = &record;
        }
        weakest->demoted = true;
        result.conflicts.push_back("orientation cycle broken by demoting " +
                                   weakest->names.first + " - " + weakest->names.second +
                                   " (margin " + std::to_string(weakest->margin) + ")");
    }

    for (const auto& record : result.edges) {
        if (record.direction && !record.demoted) result.accepted.push_back(*record.direction);
        else result.unresolved.push_back(record.edge);
    }
    return result;
}

nlohmann::json RecoveryConfig::to_json() const {
    return {{"dataset", dataset},
            {"variant", variant},
            {"use_background", use_background},
            {"use_documents", use_documents},
            {"use_pc", use_pc},
            {"document_cap", document_cap},
            {"pc_weight", pc_weight},
            {"alpha", alpha},
            {"max_order", max_order},
            {"skeleton_only", skeleton_only},
            {"jobs", jobs},
            {"model", client.model},
            {"temperature", client.temperature},
            {"max_output_tokens", client.max_output_tokens},
            {"document_char_budget", document_char_budget},
            {"domain_override", domain_override}};
}

CausalGraph RecoveryReport::digraph() const {
    return CausalGraph(skeleton.variable_names(), directed);
}

nlohmann::json RecoveryReport::to_json() const {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& entry : ledger.entries) {
        nlohmann::json votes = nlohmann::json::array();
        for (const auto& vote : entry.votes) {
            votes.push_back({{"source", vote.source},
                             {"value", vote.value},
                             {"verdict", vote.verdict},
                             {"stages", vote.stages},
                             {"flags", vote.flags},
                             {"transcript_keys", vote.transcript_keys}});
        }
        pairs.push_back({{"pair", {entry.names.first, entry.names.second}},
                         {"score", entry.score},
                         {"kept", entry.kept},
                         {"flags", entry.flags},
                         {"votes", votes}});
    }

    nlohmann::json orientation_json = nlohmann::json::array();
    for (const auto& record : orientation) {
        nlohmann::json evidence = nlohmann::json::array();
        for (const auto& ev : record.evidence)
            evidence.push_back({{"source", ev.kb_label},
                                {"verdict", to_string(ev.verdict.value)},
                                {"reference", ev.verdict.reference},
                                {"flags", ev.verdict.flags}});
        nlohmann::json rec = {{"edge", {record.names.first, record.names.second}},
                              {"votes_forward", record.votes_forward},
                              {"votes_backward", record.votes_backward},
                              {"margin", record.margin},
                              {"decided_by", record.decided_by},
                              {"demoted", record.demoted},
                              {"evidence", evidence}};
        if (record.direction)
            rec["direction"] = {skeleton.name_of(record.direction->first),
                                skeleton.name_of(record.direction->second)};
        orientation_json.push_back(std::move(rec));
    }

    nlohmann::json unresolved_json = nlohmann::json::array();
    for (const auto& edge : unresolved)
        unresolved_json.push_back({skeleton.name_of(edge.first), skeleton.name_of(edge.second)});

    CausalGraph accepted(skeleton.variable_names(), directed);
    return {{"dataset", dataset},
            {"variant", variant},
            {"config", config},
            {"skeleton", lacr::to_json(skeleton)},
            {"digraph", lacr::to_json(accepted)},
            {"unresolved", unresolved_json},
            {"pairs", pairs},
            {"orientation", orientation_json},
            {"flags", flags},
            {"partial_failures", partial_failures}};
}

namespace {

struct RunDirectory {
    std::filesystem::path path;

    // One pipeline run per directory: a differing config snapshot is an error,
    // an identical one allows the warm-cache rerun.
    void prepare(const nlohmann::json& config_snapshot) {
        std::filesystem::create_directories(path);
        const auto snapshot_path = path / "config.json";
        const std::string rendered = config_snapshot.dump(2) + "\n";
        if (std::filesystem::exists(snapshot_path)) {
            std::ifstream in(snapshot_path, std::ios::binary);
            std::string existing((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
            if (existing != rendered)
                throw std::runtime_error("run directory " + path.string() +
                                         " was created with a different config");
            return;
        }
        std::ofstream out(snapshot_path, std::ios::binary);
        out << rendered;
    }

    void write(const std::string& file, const std::string& content) const {
        std::ofstream out(path / file, std::ios::binary);
        out << content;
    }
};

// Bounded-concurrency map over pair indices; results land in caller slots.
void run_jobs(int jobs, std::size_t count, const std::function<void(std::size_t)>& work) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) work(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int worker_count =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(jobs), count));
    for (int w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const std::size_t k = next.fetch_add(1);
                if (k >= count) return;
                work(k);
            }
        });
    }
    for (auto& worker : workers) worker.join();
}

}  // namespace

RecoveryReport run_pipeline(const RecoveryConfig& config, const PipelineEnv& env) {
    if (!config.use_background && !config.use_documents && !config.use_pc)
        throw std::invalid_argument("at least one knowledge base must be enabled");
    if (!env.client && (config.use_background || config.use_documents))
        throw std::invalid_argument("pipeline needs a chat client");
    if (!env.registry) throw std::invalid_argument("pipeline needs a ground-truth registry");
    if (!env.prompts) throw std::invalid_argument("pipeline needs a prompt library");
    if (config.use_documents && env.corpus_dir.empty())
        throw std::invalid_argument("document knowledge base enabled but no corpus directory");
    if (config.use_pc && env.data_csv.empty())
        throw std::invalid_argument("PC vote enabled but no dataset CSV");

    const GroundTruthEntry truth = env.registry->load(config.dataset, config.variant);
    const std::vector<std::string>& variables = truth.variables;
    const std::string domain =
        config.domain_override.empty() ? truth.domain_string() : config.domain_override;

    RecoveryReport report;
    report.dataset = config.dataset;
    report.variant = config.variant;
    report.config = config.to_json();

    std::optional<RunDirectory> run_dir;
    if (!env.run_dir.empty()) {
        run_dir = RunDirectory{env.run_dir};
        run_dir->prepare(report.config);
    }

    // Cache wrapping keeps warm reruns free of client calls.
    std::optional<ResponseCache> cache;
    std::optional<CachingClient> caching_client;
    ChatClient* client = env.client;
    if (client) {
        std::string cache_file = env.cache_file;
        if (cache_file.empty() && !env.run_dir.empty())
            cache_file = (std::filesystem::path(env.run_dir) / "cache.jsonl").string();
        if (!cache_file.empty()) {
            cache.emplace(cache_file);
            caching_client.emplace(*client, *cache);
            client = &*caching_client;
        }
    }

    ChainConfig chain_config;
    chain_config.client = config.client;
    chain_config.document_char_budget = config.document_char_budget;

    // Optional PC knowledge base.
    std::optional<PcResult> pc_result;
    if (config.use_pc) {
        const CategoricalDataset data = CategoricalDataset::from_csv_file(env.data_csv);
        if (data.variable_names() != variables)
            throw std::invalid_argument(
                "dataset CSV variables do not match the registered factor list");
        DataCiOracle oracle(data, config.alpha);
        pc_result = pc_skeleton(oracle, config.max_order);
        for (const auto& flagged : pc_result->flagged)
            report.flags.push_back("pc-" + flagged.kind + ": " +
                                   variables[flagged.i] + "," + variables[flagged.j]);
    }

    // LACR 1: gather per-pair verdicts over the KB roster.
    const int n = static_cast<int>(variables.size());
    std::vector<Edge> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});

    std::vector<std::vector<PairEvidence>> pair_evidence(pairs.size());
    std::vector<std::string> pair_failures(pairs.size());
    run_jobs(config.jobs, pairs.size(), [&](std::size_t k) {
        const auto [a, b] = pairs[k];
        try {
            std::vector<KnowledgeBase> kbs;
            if (config.use_background) kbs.push_back(KnowledgeBase::background());
            if (config.use_documents) {
                for (auto& doc : load_pair_documents(env.corpus_dir, variables[a], variables[b],
                                                     config.document_cap))
                    kbs.push_back(std::move(doc));
            }
            for (const auto& kb : kbs) {
                CcChainResult chain = cc_chain(*client, *env.prompts, kb, variables[a],
                                               variables[b], variables, domain, chain_config);
                pair_evidence[k].push_back({kb.label(), chain.verdict, chain.stages,
                                            chain.transcript.cache_keys});
            }
        } catch (const std::exception& e) {
            pair_failures[k] = e.what();
        }
    });

    std::map<Edge, std::vector<PairEvidence>> evidence;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        evidence[pairs[k]] = std::move(pair_evidence[k]);
        if (!pair_failures[k].empty())
            report.partial_failures.push_back(variables[pairs[k].first] + "|" +
                                              variables[pairs[k].second] + ": " +
                                              pair_failures[k]);
    }

    LacrOneResult one = lacr1(variables, evidence, pc_result ? &*pc_result : nullptr,
                              config.pc_weight);
    report.skeleton = one.skeleton;
    report.ledger = std::move(one.ledger);

    // LACR 2 over the surviving edges.
    if (!config.skeleton_only && client) {
        const std::vector<Edge> edges(report.skeleton.edges().begin(),
                                      report.skeleton.edges().end());
        std::vector<std::vector<OrientationEvidence>> edge_evidence(edges.size());
        std::vector<std::string> edge_failures(edges.size());
        run_jobs(config.jobs, edges.size(), [&](std::size_t k) {
            const auto [a, b] = edges[k];
            try {
                std::vector<KnowledgeBase> kbs;
                if (config.use_background) kbs.push_back(KnowledgeBase::background());
                if (config.use_documents) {
                    for (auto& doc : load_pair_documents(env.corpus_dir, variables[a],
                                                         variables[b], config.document_cap))
                        kbs.push_back(std::move(doc));
                }
                for (const auto& kb : kbs) {
                    OrientationChainResult chain =
                        orientation_chain(*client, *env.prompts, kb, variables[a], variables[b],
                                          domain, chain_config);
                    edge_evidence[k].push_back({kb.label(), chain.verdict});
                }
            } catch (const std::exception& e) {
                edge_failures[k] = e.what();
            }
        });

        std::map<Edge, std::vector<OrientationEvidence>> orientation_evidence;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            orientation_evidence[edges[k]] = std::move(edge_evidence[k]);
            if (!edge_failures[k].empty())
                report.partial_failures.push_back(variables[edges[k].first] + "|" +
                                                  variables[edges[k].second] + ": " +
                                                  edge_failures[k]);
        }

        LacrTwoResult two = lacr2(report.skeleton, orientation_evidence);
        report.directed = std::move(two.accepted);
        report.unresolved = std::move(two.unresolved);
        report.orientation = std::move(two.edges);
        for (auto& conflict : two.conflicts) report.flags.push_back(std::move(conflict));
    } else {
        for (const auto& edge : report.skeleton.edges()) report.unresolved.push_back(edge);
    }

    if (run_dir) {
        run_dir->write("report.json", report.to_json().dump(2) + "\n");
        run_dir->write("skeleton.dot", to_dot(report.skeleton));
        run_dir->write("digraph.dot", to_dot(report.digraph()));
    }
    return report;
}

RecoveryReport report_from_json(const nlohmann::json& value) {
    RecoveryReport report;
    report.dataset = value.at("dataset").get<std::string>();
    report.variant = value.at("variant").get<std::string>();
    report.config = value.at("config");
    report.skeleton = skeleton_from_json(value.at("skeleton"));

    const CausalGraph accepted = graph_from_json(value.at("digraph"));
    for (const auto& arrow : accepted.edges()) report.directed.push_back(arrow);

    for (const auto& edge : value.at("unresolved"))
        report.unresolved.push_back(make_edge(report.skeleton.index_of(edge[0].get<std::string>()),
                                              report.skeleton.index_of(edge[1].get<std::string>())));

    for (const auto& raw : value.at("pairs")) {
        PairScore entry;
        entry.names = {raw.at("pair")[0].get<std::string>(), raw.at("pair")[1].get<std::string>()};
        entry.pair = make_edge(report.skeleton.index_of(entry.names.first),
                               report.skeleton.index_of(entry.names.second));
        entry.score = raw.at("score").get<int>();
        entry.kept = raw.at("kept").get<bool>();
        entry.flags = raw.at("flags").get<std::vector<std::string>>();
        for (const auto& vote : raw.at("votes")) {
            Vote v;
            v.source = vote.at("source").get<std::string>();
            v.value = vote.at("value").get<int>();
            v.verdict = vote.at("verdict").get<std::string>();
            v.stages = vote.at("stages").get<int>();
            v.flags = vote.at("flags").get<std::vector<std::string>>();
            v.transcript_keys = vote.at("transcript_keys").get<std::vector<std::string>>();
            entry.votes.push_back(std::move(v));
        }
        report.ledger.entries.push_back(std::move(entry));
    }

    report.flags = value.at("flags").get<std::vector<std::string>>();
    report.partial_failures = value.at("partial_failures").get<std::vector<std::string>>();
    return report;
}

}  // namespace lacr
