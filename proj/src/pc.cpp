#include "lacr/pc.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace lacr {

void SepSetMap::record(int a, int b, std::vector<int> set) {
    const Edge e = make_edge(a, b);
    for (int v : set)
        if (v == a || v == b)
            throw std::invalid_argument("separating set must exclude the pair it separates");
    sets_[e] = std::move(set);
}

bool SepSetMap::contains(int a, int b) const { return sets_.count(make_edge(a, b)) != 0; }

const std::vector<int>& SepSetMap::get(int a, int b) const {
    auto it = sets_.find(make_edge(a, b));
    if (it == sets_.end())
        throw std::out_of_range("no separating set recorded for pair (" + std::to_string(a) +
                                ", " + std::to_string(b) + ")");
    return it->second;
}

namespace {

// Size-k index combinations of `pool` in lexicographic order.
void for_each_combination(const std::vector<int>& pool, int k,
                          const std::function<bool(const std::vector<int>&)>& visit) {
    const int n = static_cast<int>(pool.size());
    if (k > n) return;
    std::vector<int> idx(k);
    for (int t = 0; t < k; ++t) idx[t] = t;
    std::vector<int> subset(k);
    while (true) {
        for (int t = 0; t < k; ++t) subset[t] = pool[idx[t]];
        if (visit(subset)) return;
        int t = k - 1;
        while (t >= 0 && idx[t] == n - k + t) --t;
        if (t < 0) return;
        ++idx[t];
        for (int u = t + 1; u < k; ++u) idx[u] = idx[u - 1] + 1;
    }
}

std::vector<int> adjacent_excluding(const Skeleton& skeleton, int v, int excluded) {
    std::vector<int> out = skeleton.neighbors(v);
    out.erase(std::remove(out.begin(), out.end(), excluded), out.end());
    return out;
}

}  // namespace

PcResult pc_skeleton(CiOracle& oracle, int max_order) {
    if (max_order < 0) throw std::invalid_argument("max_order must be >= 0");
    const int n = oracle.variable_count();
    if (n < 2) throw std::invalid_argument("PC needs at least 2 variables");

    PcResult result{Skeleton::complete(oracle.variable_names()), {}, {}, 0};

    auto run_query = [&](int i, int j, const std::vector<int>& z) {
        CiResult ci = oracle.test(i, j, z);
        if (ci.degenerate) result.flagged.push_back({i, j, z, "degenerate"});
        else if (ci.small_strata) result.flagged.push_back({i, j, z, "small-strata"});
        return ci.independent;
    };

    for (int order = 0; order <= max_order; ++order) {
        bool any_pool_large_enough = false;
        // Snapshot so a removal earlier in the sweep does not reorder the walk.
        const std::vector<Edge> edges(result.skeleton.edges().begin(),
                                      result.skeleton.edges().end());
        for (const auto& [i, j] : edges) {
            if (!result.skeleton.has_edge(i, j)) continue;

            std::vector<std::vector<int>> candidates;
            std::set<std::vector<int>> seen;
            auto collect = [&](const std::vector<int>& pool) {
                for_each_combination(pool, order, [&](const std::vector<int>& subset) {
                    if (seen.insert(subset).second) candidates.push_back(subset);
                    return false;
                });
            };
            const auto pool_i = adjacent_excluding(result.skeleton, i, j);
            const auto pool_j = adjacent_excluding(result.skeleton, j, i);
            if (static_cast<int>(pool_i.size()) >= order) {
                any_pool_large_enough = true;
                collect(pool_i);
            }
            if (static_cast<int>(pool_j.size()) >= order) {
                any_pool_large_enough = true;
                collect(pool_j);
            }

            for (const auto& z : candidates) {
                if (run_query(i, j, z)) {
                    result.skeleton = result.skeleton.without_edge(i, j);
                    result.sepsets.record(i, j, z);
                    break;
                }
            }
        }
        result.highest_order_reached = order;
        if (!any_pool_large_enough && order > 0) break;
    }
    return result;
}

bool ColliderOrientation::has_arrow(int from, int to) const {
    return std::find(directed.begin(), directed.end(), std::make_pair(from, to)) !=
           directed.end();
}

ColliderOrientation pc_orient_colliders(const PcResult& pc) {
    const Skeleton& skeleton = pc.skeleton;
    const int n = skeleton.variable_count();
    ColliderOrientation out;

    auto propose = [&out, &skeleton](int from, int to) {
        if (out.has_arrow(to, from)) {
            out.conflicts.push_back("conflicting collider orientations at " +
                                    skeleton.name_of(from) + " - " + skeleton.name_of(to));
            return;
        }
        if (!out.has_arrow(from, to)) out.directed.emplace_back(from, to);
    };

    for (int k = 0; k < n; ++k) {
        const auto nbrs = skeleton.neighbors(k);
        for (std::size_t a = 0; a < nbrs.size(); ++a) {
            for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
                const int i = nbrs[a];
                const int j = nbrs[b];
                if (skeleton.has_edge(i, j)) continue;  // shielded
                if (!pc.sepsets.contains(i, j)) continue;
                const auto& sep = pc.sepsets.get(i, j);
                if (std::find(sep.begin(), sep.end(), k) != sep.end()) continue;
                propose(i, k);
                propose(j, k);
            }
        }
    }

    for (const auto& [a, b] : skeleton.edges()) {
        if (!out.has_arrow(a, b) && !out.has_arrow(b, a)) out.undecided.push_back({a, b});
    }
    return out;
}

int pc_vote(const PcResult& pc, int i, int j) {
    return pc.skeleton.has_edge(i, j) ? +1 : -1;
}

}  // namespace lacr
