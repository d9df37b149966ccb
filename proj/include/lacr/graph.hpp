#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lacr {

// Undirected edge stored canonically (smaller index first).
using Edge = std::pair<int, int>;

Edge make_edge(int a, int b);

struct VariableId {
    int index = -1;
    std::string name;
};

// Undirected skeleton over named variables.
class Skeleton {
public:
    Skeleton() = default;  // empty placeholder
    explicit Skeleton(std::vector<std::string> variables);
    Skeleton(std::vector<std::string> variables, const std::vector<Edge>& edges);

    // All n(n-1)/2 pairs.
    static Skeleton complete(std::vector<std::string> variables);

    int variable_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& variable_names() const { return names_; }
    const std::string& name_of(int v) const;
    int index_of(const std::string& name) const;
    VariableId variable(int v) const { return {v, name_of(v)}; }

    bool has_edge(int a, int b) const;
    const std::set<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }
    std::vector<int> neighbors(int v) const;

    Skeleton with_edge(int a, int b) const;
    Skeleton without_edge(int a, int b) const;

    bool operator==(const Skeleton& other) const = default;

private:
    void check_vertex(int v) const;
    void insert_edge(int a, int b);

    std::vector<std::string> names_;
    std::set<Edge> edges_;
};

// Directed acyclic causal graph. Immutable after construction; every
// construction path re-validates acyclicity.
class CausalGraph {
public:
    CausalGraph(std::vector<std::string> variables,
                const std::vector<std::pair<int, int>>& edges);

    static CausalGraph from_named_edges(
        std::vector<std::string> variables,
        const std::vector<std::pair<std::string, std::string>>& edges);

    int variable_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& variable_names() const { return names_; }
    const std::string& name_of(int v) const;
    int index_of(const std::string& name) const;
    VariableId variable(int v) const { return {v, name_of(v)}; }

    bool has_directed_edge(int from, int to) const;
    bool adjacent(int a, int b) const;
    const std::set<std::pair<int, int>>& edges() const { return edges_; }

    std::vector<int> parents(int v) const;
    std::vector<int> children(int v) const;
    // Strict descendants (v excluded).
    std::set<int> descendants(int v) const;

    // New graph with one extra edge; throws if it would create a cycle.
    CausalGraph with_edge(int from, int to) const;

    Skeleton skeleton() const;

    bool operator==(const CausalGraph& other) const = default;

private:
    void check_vertex(int v) const;
    void validate() const;

    std::vector<std::string> names_;
    std::set<std::pair<int, int>> edges_;
};

// A path is a sequence of distinct variables, consecutively adjacent in the
// skeleton of its host graph.
class Path {
public:
    Path(const CausalGraph& graph, std::vector<int> nodes);

    const std::vector<int>& nodes() const { return nodes_; }
    std::size_t length() const { return nodes_.size(); }

private:
    std::vector<int> nodes_;
};

struct ConditioningSet {
    std::set<int> members;

    ConditioningSet() = default;
    ConditioningSet(std::initializer_list<int> vs) : members(vs) {}
    explicit ConditioningSet(std::set<int> vs) : members(std::move(vs)) {}

    bool contains(int v) const { return members.count(v) != 0; }
    bool empty() const { return members.empty(); }
};

// True iff both path-neighbors of the node at `position` point into it.
bool is_collider(const CausalGraph& graph, const Path& path, int position);

// True iff z blocks the path: a non-collider interior node lies in z, or a
// collider interior node is outside z with no descendant in z.
bool blocks(const CausalGraph& graph, const Path& path, const ConditioningSet& z);

// All simple paths between i and j in the skeleton of `graph`, in
// lexicographic node order.
std::vector<std::vector<int>> simple_paths(const CausalGraph& graph, int i, int j);

// True iff z blocks every path between i and j.
bool d_separates(const CausalGraph& graph, int i, int j, const ConditioningSet& z);

}  // namespace lacr
