#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lacr/graph.hpp"

namespace lacr {

struct SimulationRow {
    int voters = 0;
    double mean_f1 = 0.0;
    double stderr_f1 = 0.0;
    double pair_accuracy = 0.0;  // fraction of per-pair decisions matching truth
};

struct SimulationTable {
    std::vector<SimulationRow> rows;

    // Largest drop between consecutive voter counts; 0 when non-decreasing.
    double worst_decrease() const;
    std::string to_text() const;
};

// Wisdom-of-the-Crowd check: each simulated voter independently reports the
// true adjacency of every pair with probability p; votes aggregate under the
// majority rule (edge kept iff score > 0). Requires p in (0.5, 1) and odd
// voter counts.
SimulationTable simulate_majority_accuracy(const Skeleton& truth, double voter_accuracy,
                                           const std::vector<int>& voter_counts, int trials,
                                           std::uint64_t seed);

// P(majority of m voters correct) for per-voter accuracy p: the binomial
// tail sum_{k > m/2} C(m,k) p^k (1-p)^(m-k).
double majority_accuracy(double p, int voters);

// Random skeleton with each pair present with probability 0.5.
Skeleton random_skeleton(int nodes, std::uint64_t seed);

}  // namespace lacr
