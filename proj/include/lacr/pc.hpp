#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lacr/ci_test.hpp"
#include "lacr/graph.hpp"

namespace lacr {

// Conditioning set that first separated a removed pair.
class SepSetMap {
public:
    void record(int a, int b, std::vector<int> set);
    bool contains(int a, int b) const;
    const std::vector<int>& get(int a, int b) const;
    std::size_t size() const { return sets_.size(); }
    const std::map<Edge, std::vector<int>>& all() const { return sets_; }

private:
    std::map<Edge, std::vector<int>> sets_;
};

struct PcFlaggedQuery {
    int i = -1;
    int j = -1;
    std::vector<int> z;
    std::string kind;  // "degenerate" | "small-strata"
};

struct PcResult {
    Skeleton skeleton;
    SepSetMap sepsets;
    std::vector<PcFlaggedQuery> flagged;
    int highest_order_reached = 0;
};

// Edge-deletion sweep in ascending conditioning order over current neighbors
// of each pair. Deterministic for a fixed variable order: pairs and candidate
// sets are visited lexicographically, and an edge disappears the first time
// any candidate set tests independent.
PcResult pc_skeleton(CiOracle& oracle, int max_order);

struct ColliderOrientation {
    std::vector<std::pair<int, int>> directed;  // accepted arrows
    std::vector<Edge> undecided;                // skeleton edges left undirected
    std::vector<std::string> conflicts;         // reported, never overwritten

    bool has_arrow(int from, int to) const;
};

// Orients every unshielded triple i - k - j with k outside sepset(i, j) as
// i -> k <- j.
ColliderOrientation pc_orient_colliders(const PcResult& pc);

// +1 if the pair survived in the PC skeleton, -1 otherwise.
int pc_vote(const PcResult& pc, int i, int j);

}  // namespace lacr
