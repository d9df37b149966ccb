#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lacr/graph.hpp"

namespace lacr {

// One shipped reference graph. CORONARY variants are skeleton-only; SACHS is
// drawn with a reciprocal PIP2/PIP3 arrow pair, so its arrows do not form a
// DAG and dag() is only available for acyclic entries.
struct GroundTruthEntry {
    std::string name;
    std::string variant;
    std::vector<std::string> domains;
    std::vector<std::string> variables;  // factor list, figure order
    bool directed = false;
    std::vector<std::pair<int, int>> arrows;  // directed entries only
    std::set<Edge> cyclic_pairs;              // reciprocal-arrow exceptions
    Skeleton skeleton;

    bool has_dag() const;
    CausalGraph dag() const;

    // "medical, biology, and social science" style join for the {domain}
    // prompt placeholder.
    std::string domain_string() const;

    int index_of(const std::string& factor) const { return skeleton.index_of(factor); }
};

// Loads data/ground_truth/<name>.<variant>.json files on demand.
class GroundTruthRegistry {
public:
    explicit GroundTruthRegistry(std::string directory);

    GroundTruthEntry load(const std::string& name, const std::string& variant) const;
    bool contains(const std::string& name, const std::string& variant) const;
    const std::string& directory() const { return directory_; }

private:
    std::string directory_;
};

std::string join_names(const std::vector<std::string>& names);

}  // namespace lacr
