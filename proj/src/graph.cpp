#include "lacr/graph.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace lacr {

Edge make_edge(int a, int b) {
    if (a == b) throw std::invalid_argument("self-loop edge (" + std::to_string(a) + ")");
    return a < b ? Edge{a, b} : Edge{b, a};
}

namespace {

void check_unique_names(const std::vector<std::string>& names) {
    std::unordered_set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate variable name: " + n);
    }
}

int find_index(const std::vector<std::string>& names, const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::out_of_range("unknown variable: " + name);
    return static_cast<int>(it - names.begin());
}

}  // namespace

Skeleton::Skeleton(std::vector<std::string> variables) : names_(std::move(variables)) {
    check_unique_names(names_);
}

Skeleton::Skeleton(std::vector<std::string> variables, const std::vector<Edge>& edges)
    : names_(std::move(variables)) {
    check_unique_names(names_);
    for (const auto& [a, b] : edges) insert_edge(a, b);
}

Skeleton Skeleton::complete(std::vector<std::string> variables) {
    if (variables.size() < 2)
        throw std::invalid_argument("complete skeleton needs at least 2 variables");
    Skeleton s(std::move(variables));
    const int n = s.variable_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) s.edges_.insert({a, b});
    return s;
}

void Skeleton::check_vertex(int v) const {
    if (v < 0 || v >= variable_count())
        throw std::out_of_range("variable index out of range: " + std::to_string(v));
}

void Skeleton::insert_edge(int a, int b) {
    check_vertex(a);
    check_vertex(b);
    edges_.insert(make_edge(a, b));
}

const std::string& Skeleton::name_of(int v) const {
    check_vertex(v);
    return names_[v];
}

int Skeleton::index_of(const std::string& name) const { return find_index(names_, name); }

bool Skeleton::has_edge(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    if (a == b) return false;
    return edges_.count(make_edge(a, b)) != 0;
}

std::vector<int> Skeleton::neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    for (const auto& [a, b] : edges_) {
        if (a == v) out.push_back(b);
        else if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Skeleton Skeleton::with_edge(int a, int b) const {
    Skeleton copy = *this;
    copy.insert_edge(a, b);
    return copy;
}

Skeleton Skeleton::without_edge(int a, int b) const {
    check_vertex(a);
    check_vertex(b);
    Skeleton copy = *this;
    copy.edges_.erase(make_edge(a, b));
    return copy;
}

CausalGraph::CausalGraph(std::vector<std::string> variables,
                         const std::vector<std::pair<int, int>>& edges)
    : names_(std::move(variables)) {
    check_unique_names(names_);
    for (const auto& [from, to] : edges) {
        check_vertex(from);
        check_vertex(to);
        if (from == to)
            throw std::invalid_argument("self-loop on " + names_[from]);
        edges_.insert({from, to});
    }
    validate();
}

CausalGraph CausalGraph::from_named_edges(
    std::vector<std::string> variables,
    const std::vector<std::pair<std::string, std::string>>& edges) {
    std::vector<std::pair<int, int>> resolved;
    resolved.reserve(edges.size());
    for (const auto& [from, to] : edges)
        resolved.emplace_back(find_index(variables, from), find_index(variables, to));
    return CausalGraph(std::move(variables), resolved);
}

void CausalGraph::check_vertex(int v) const {
    if (v < 0 || v >= variable_count())
        throw std::out_of_range("variable index out of range: " + std::to_string(v));
}

// Kahn's algorithm; anything left over sits on a cycle.
void CausalGraph::validate() const {
    const int n = variable_count();
    std::vector<int> indegree(n, 0);
    for (const auto& [from, to] : edges_) indegree[to]++;
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (indegree[v] == 0) queue.push_back(v);
    int removed = 0;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        ++removed;
        for (const auto& [from, to] : edges_) {
            if (from != v) continue;
            if (--indegree[to] == 0) queue.push_back(to);
        }
    }
    if (removed != n) throw std::invalid_argument("directed cycle in causal graph");
}

const std::string& CausalGraph::name_of(int v) const {
    check_vertex(v);
    return names_[v];
}

int CausalGraph::index_of(const std::string& name) const { return find_index(names_, name); }

bool CausalGraph::has_directed_edge(int from, int to) const {
    check_vertex(from);
    check_vertex(to);
    return edges_.count({from, to}) != 0;
}

bool CausalGraph::adjacent(int a, int b) const {
    return has_directed_edge(a, b) || has_directed_edge(b, a);
}

std::vector<int> CausalGraph::parents(int v) const {
    check_vertex(v);
    std::vector<int> out;
    for (const auto& [from, to] : edges_)
        if (to == v) out.push_back(from);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> CausalGraph::children(int v) const {
    check_vertex(v);
    std::vector<int> out;
    for (const auto& [from, to] : edges_)
        if (from == v) out.push_back(to);
    std::sort(out.begin(), out.end());
    return out;
}

std::set<int> CausalGraph::descendants(int v) const {
    check_vertex(v);
    std::set<int> seen;
    std::vector<int> stack = children(v);
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (!seen.insert(u).second) continue;
        for (int c : children(u)) stack.push_back(c);
    }
    seen.erase(v);
    return seen;
}

CausalGraph CausalGraph::with_edge(int from, int to) const {
    std::vector<std::pair<int, int>> edges(edges_.begin(), edges_.end());
    edges.emplace_back(from, to);
    return CausalGraph(names_, edges);
}

Skeleton CausalGraph::skeleton() const {
    std::vector<Edge> undirected;
    undirected.reserve(edges_.size());
    for (const auto& [from, to] : edges_) undirected.push_back(make_edge(from, to));
    return Skeleton(names_, undirected);
}

Path::Path(const CausalGraph& graph, std::vector<int> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw std::invalid_argument("path needs at least 2 nodes");
    std::set<int> distinct(nodes_.begin(), nodes_.end());
    if (distinct.size() != nodes_.size())
        throw std::invalid_argument("path nodes must be distinct");
    for (std::size_t k = 0; k + 1 < nodes_.size(); ++k) {
        if (!graph.adjacent(nodes_[k], nodes_[k + 1]))
            throw std::invalid_argument("path nodes " + graph.name_of(nodes_[k]) + " and " +
                                        graph.name_of(nodes_[k + 1]) + " are not adjacent");
    }
}

bool is_collider(const CausalGraph& graph, const Path& path, int position) {
    const auto& nodes = path.nodes();
    if (position <= 0 || position >= static_cast<int>(nodes.size()) - 1)
        throw std::invalid_argument("collider position must be interior to the path");
    const int prev = nodes[position - 1];
    const int node = nodes[position];
    const int next = nodes[position + 1];
    return graph.has_directed_edge(prev, node) && graph.has_directed_edge(next, node);
}

bool blocks(const CausalGraph& graph, const Path& path, const ConditioningSet& z) {
    const auto& nodes = path.nodes();
    for (int k = 1; k + 1 < static_cast<int>(nodes.size()); ++k) {
        const int node = nodes[k];
        if (is_collider(graph, path, k)) {
            if (z.contains(node)) continue;
            bool descendant_in_z = false;
            for (int d : graph.descendants(node)) {
                if (z.contains(d)) {
                    descendant_in_z = true;
                    break;
                }
            }
            if (!descendant_in_z) return true;
        } else if (z.contains(node)) {
            // Non-collider interior node emits an arrow along the path.
            return true;
        }
    }
    return false;
}

std::vector<std::vector<int>> simple_paths(const CausalGraph& graph, int i, int j) {
    const int n = graph.variable_count();
    if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::out_of_range("variable index out of range");
    if (i == j) throw std::invalid_argument("path endpoints must differ");

    std::vector<std::vector<int>> adjacency(n);
    for (const auto& [from, to] : graph.edges()) {
        adjacency[from].push_back(to);
        adjacency[to].push_back(from);
    }
    for (auto& nbrs : adjacency) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    }

    std::vector<std::vector<int>> result;
    std::vector<int> current{i};
    std::vector<bool> visited(n, false);
    visited[i] = true;
    std::function<void()> dfs = [&] {
        const int last = current.back();
        if (last == j) {
            result.push_back(current);
            return;
        }
        for (int next : adjacency[last]) {
            if (visited[next]) continue;
            visited[next] = true;
            current.push_back(next);
            dfs();
            current.pop_back();
            visited[next] = false;
        }
    };
    dfs();
    return result;
}

bool d_separates(const CausalGraph& graph, int i, int j, const ConditioningSet& z) {
    if (i == j) throw std::invalid_argument("d-separation query needs distinct variables");
    if (z.contains(i) || z.contains(j))
        throw std::invalid_argument("conditioning set must exclude the queried pair");
    for (int v : z.members) {
        if (v < 0 || v >= graph.variable_count())
            throw std::out_of_range("conditioning variable out of range: " + std::to_string(v));
    }
    for (const auto& nodes : simple_paths(graph, i, j)) {
        if (!blocks(graph, Path(graph, nodes), z)) return false;
    }
    return true;
}

}  // namespace lacr
