#include "lacr/graph_io.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lacr {

namespace {

std::string quote(const std::string& name) {
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

nlohmann::json to_json(const CausalGraph& graph) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [from, to] : graph.edges())
        edges.push_back({graph.name_of(from), graph.name_of(to)});
    return {{"variables", graph.variable_names()}, {"directed", true}, {"edges", edges}};
}

nlohmann::json to_json(const Skeleton& skeleton) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : skeleton.edges())
        edges.push_back({skeleton.name_of(a), skeleton.name_of(b)});
    return {{"variables", skeleton.variable_names()}, {"directed", false}, {"edges", edges}};
}

std::string to_dot(const CausalGraph& graph) {
    std::ostringstream out;
    out << "digraph g {\n";
    for (const auto& name : graph.variable_names()) out << "  " << quote(name) << ";\n";
    for (const auto& [from, to] : graph.edges())
        out << "  " << quote(graph.name_of(from)) << " -> " << quote(graph.name_of(to)) << ";\n";
    out << "}\n";
    return out.str();
}

std::string to_dot(const Skeleton& skeleton) {
    std::ostringstream out;
    out << "graph g {\n";
    for (const auto& name : skeleton.variable_names()) out << "  " << quote(name) << ";\n";
    for (const auto& [a, b] : skeleton.edges())
        out << "  " << quote(skeleton.name_of(a)) << " -- " << quote(skeleton.name_of(b)) << ";\n";
    out << "}\n";
    return out.str();
}

std::string export_graph(const CausalGraph& graph, ExportFormat format) {
    return format == ExportFormat::kDot ? to_dot(graph) : to_json(graph).dump(2) + "\n";
}

std::string export_graph(const Skeleton& skeleton, ExportFormat format) {
    return format == ExportFormat::kDot ? to_dot(skeleton) : to_json(skeleton).dump(2) + "\n";
}

namespace {

std::vector<std::pair<std::string, std::string>> named_edges(const nlohmann::json& value) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& edge : value.at("edges")) {
        if (!edge.is_array() || edge.size() != 2)
            throw std::invalid_argument("graph JSON edge must be a [from, to] pair");
        out.emplace_back(edge[0].get<std::string>(), edge[1].get<std::string>());
    }
    return out;
}

}  // namespace

CausalGraph graph_from_json(const nlohmann::json& value) {
    if (!value.value("directed", true))
        throw std::invalid_argument("graph JSON is undirected; expected a directed graph");
    return CausalGraph::from_named_edges(value.at("variables").get<std::vector<std::string>>(),
                                         named_edges(value));
}

Skeleton skeleton_from_json(const nlohmann::json& value) {
    if (value.value("directed", false))
        throw std::invalid_argument("graph JSON is directed; expected a skeleton");
    auto variables = value.at("variables").get<std::vector<std::string>>();
    Skeleton s(variables);
    for (const auto& [from, to] : named_edges(value))
        s = s.with_edge(s.index_of(from), s.index_of(to));
    return s;
}

std::variant<CausalGraph, Skeleton> import_graph(const std::string& text) {
    nlohmann::json value = nlohmann::json::parse(text);
    if (value.at("directed").get<bool>()) return graph_from_json(value);
    return skeleton_from_json(value);
}

}  // namespace lacr
