#pragma once

// Test-only oracles, kept independent of the library's d-separation path:
// a moralized-ancestral-graph reachability method, a bitmask simple-path
// counter, and deterministic random-graph generators.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "lacr/chat.hpp"
#include "lacr/ci_test.hpp"
#include "lacr/dataset.hpp"
#include "lacr/graph.hpp"

namespace lacr::testing {

// d-separation via the moral graph of the ancestral set: take ancestors of
// {i, j} ∪ z, marry co-parents, drop directions, delete z, and test
// connectivity.
inline bool moral_graph_d_separates(const CausalGraph& graph, int i, int j,
                                    const std::set<int>& z) {
    const int n = graph.variable_count();

    std::set<int> ancestral;
    std::deque<int> frontier{i, j};
    for (int v : z) frontier.push_back(v);
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop_front();
        if (!ancestral.insert(v).second) continue;
        for (int p : graph.parents(v)) frontier.push_back(p);
    }

    std::vector<std::set<int>> adjacency(n);
    auto connect = [&adjacency](int a, int b) {
        adjacency[a].insert(b);
        adjacency[b].insert(a);
    };
    for (const auto& [from, to] : graph.edges()) {
        if (ancestral.count(from) && ancestral.count(to)) connect(from, to);
    }
    // Marry parents sharing a child inside the ancestral set.
    for (int child : ancestral) {
        const auto parents = graph.parents(child);
        for (std::size_t a = 0; a < parents.size(); ++a)
            for (std::size_t b = a + 1; b < parents.size(); ++b)
                if (ancestral.count(parents[a]) && ancestral.count(parents[b]))
                    connect(parents[a], parents[b]);
    }

    std::set<int> visited(z.begin(), z.end());  // conditioning nodes block
    std::deque<int> queue{i};
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        if (v == j) return false;
        if (!visited.insert(v).second) continue;
        for (int next : adjacency[v])
            if (!visited.count(next)) queue.push_back(next);
    }
    return true;
}

// Simple-path count between i and j over vertex subsets (independent of the
// library's DFS enumeration).
inline long long count_simple_paths_dp(const CausalGraph& graph, int i, int j) {
    const int n = graph.variable_count();
    std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
    for (const auto& [from, to] : graph.edges()) {
        adjacent[from][to] = true;
        adjacent[to][from] = true;
    }
    // dp[mask][last]: paths from i covering exactly `mask`, ending at `last`.
    std::vector<std::vector<long long>> dp(1 << n, std::vector<long long>(n, 0));
    dp[1 << i][i] = 1;
    long long total = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
        for (int last = 0; last < n; ++last) {
            if (!dp[mask][last]) continue;
            if (last == j) {
                total += dp[mask][last];
                continue;  // simple paths stop at j
            }
            for (int next = 0; next < n; ++next) {
                if (!adjacent[last][next] || (mask & (1 << next))) continue;
                dp[mask | (1 << next)][next] += dp[mask][last];
            }
        }
    }
    return total;
}

// Random DAG: random topological permutation, forward edges kept with
// probability `edge_probability`.
inline CausalGraph random_dag(int n, double edge_probability, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    for (int v = n - 1; v > 0; --v) std::swap(order[v], order[rng.next_index(v + 1)]);

    std::vector<std::string> names;
    for (int v = 1; v <= n; ++v) names.push_back("V" + std::to_string(v));
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (rng.next_double() < edge_probability) edges.emplace_back(order[a], order[b]);
    return CausalGraph(names, edges);
}

// All subsets of {0..n-1} \ {i, j} with at most `max_size` members.
inline std::vector<std::set<int>> conditioning_sets(int n, int i, int j, int max_size) {
    std::vector<int> pool;
    for (int v = 0; v < n; ++v)
        if (v != i && v != j) pool.push_back(v);
    std::vector<std::set<int>> out;
    const int limit = 1 << pool.size();
    for (int mask = 0; mask < limit; ++mask) {
        std::set<int> z;
        for (std::size_t k = 0; k < pool.size(); ++k)
            if (mask & (1 << k)) z.insert(pool[k]);
        if (static_cast<int>(z.size()) <= max_size) out.push_back(std::move(z));
    }
    return out;
}

// CI oracle answering from a scripted verdict table; unlisted queries are
// dependent.
class ScriptedCiOracle : public CiOracle {
public:
    explicit ScriptedCiOracle(std::vector<std::string> names) : names_(std::move(names)) {}

    void set_independent(int i, int j, std::vector<int> z) {
        std::sort(z.begin(), z.end());
        independent_.insert({make_edge(i, j), std::move(z)});
    }

    CiResult test(int i, int j, const std::vector<int>& z) override {
        std::vector<int> sorted = z;
        std::sort(sorted.begin(), sorted.end());
        CiResult result;
        result.independent = independent_.count({make_edge(i, j), sorted}) != 0;
        result.p_value = result.independent ? 1.0 : 0.0;
        return result;
    }
    int variable_count() const override { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& variable_names() const override { return names_; }

private:
    std::vector<std::string> names_;
    std::set<std::pair<Edge, std::vector<int>>> independent_;
};

// Client returning queued responses in order; records every call.
class QueueClient : public ChatClient {
public:
    explicit QueueClient(std::vector<std::string> responses)
        : responses_(responses.begin(), responses.end()) {}

    std::string complete(const std::vector<Turn>& turns, const ClientParams&,
                         const CallRoute& route) override {
        calls.push_back(route);
        prompts.push_back(turns.back().text);
        if (route.stage == "background" || route.stage == "orientation_background")
            return "Acknowledged.";
        if (responses_.empty()) throw std::runtime_error("queue client exhausted");
        std::string response = responses_.front();
        responses_.pop_front();
        return response;
    }

    std::vector<CallRoute> calls;
    std::vector<std::string> prompts;

private:
    std::deque<std::string> responses_;
};

// Client that fails transport a fixed number of times before succeeding.
class FlakyClient : public ChatClient {
public:
    FlakyClient(ChatClient& inner, int failures) : inner_(&inner), failures_(failures) {}

    std::string complete(const std::vector<Turn>& turns, const ClientParams& params,
                         const CallRoute& route) override {
        if (failures_ > 0) {
            --failures_;
            throw TransportError("synthetic outage");
        }
        return inner_->complete(turns, params, route);
    }

private:
    ChatClient* inner_;
    int failures_;
};

}  // namespace lacr::testing
