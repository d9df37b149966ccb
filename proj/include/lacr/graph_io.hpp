#pragma once

#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "lacr/graph.hpp"

namespace lacr {

enum class ExportFormat { kDot, kJson };

// Graph JSON: {"variables": [names...], "directed": bool, "edges": [[from,to],...]}.
nlohmann::json to_json(const CausalGraph& graph);
nlohmann::json to_json(const Skeleton& skeleton);

std::string to_dot(const CausalGraph& graph);
std::string to_dot(const Skeleton& skeleton);

std::string export_graph(const CausalGraph& graph, ExportFormat format);
std::string export_graph(const Skeleton& skeleton, ExportFormat format);

CausalGraph graph_from_json(const nlohmann::json& value);
Skeleton skeleton_from_json(const nlohmann::json& value);

// Parses the JSON text form, dispatching on the "directed" field.
std::variant<CausalGraph, Skeleton> import_graph(const std::string& text);

}  // namespace lacr
