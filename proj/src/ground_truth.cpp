#include "lacr/ground_truth.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lacr {

std::string join_names(const std::vector<std::string>& names) {
    if (names.empty()) return "";
    if (names.size() == 1) return names[0];
    if (names.size() == 2) return names[0] + " and " + names[1];
    std::string out;
    for (std::size_t k = 0; k + 1 < names.size(); ++k) out += names[k] + ", ";
    out += "and " + names.back();
    return out;
}

bool GroundTruthEntry::has_dag() const {
    if (!directed) return false;
    try {
        CausalGraph(variables, arrows);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

CausalGraph GroundTruthEntry::dag() const {
    if (!directed)
        throw std::logic_error(name + "." + variant + " is skeleton-only");
    return CausalGraph(variables, arrows);
}

std::string GroundTruthEntry::domain_string() const { return join_names(domains); }

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

GroundTruthRegistry::GroundTruthRegistry(std::string directory)
    : directory_(std::move(directory)) {}

bool GroundTruthRegistry::contains(const std::string& name, const std::string& variant) const {
    return std::filesystem::exists(std::filesystem::path(directory_) /
                                   (lower(name) + "." + lower(variant) + ".json"));
}

GroundTruthEntry GroundTruthRegistry::load(const std::string& name,
                                           const std::string& variant) const {
    const auto path =
        std::filesystem::path(directory_) / (lower(name) + "." + lower(variant) + ".json");
    std::ifstream in(path);
    if (!in)
        throw std::out_of_range("no ground truth registered for " + name + "." + variant +
                                " (looked in " + directory_ + ")");
    nlohmann::json value = nlohmann::json::parse(in);

    GroundTruthEntry entry{.name = value.at("name").get<std::string>(),
                           .variant = value.at("variant").get<std::string>(),
                           .domains = value.at("domains").get<std::vector<std::string>>(),
                           .variables = value.at("variables").get<std::vector<std::string>>(),
                           .directed = value.at("directed").get<bool>(),
                           .arrows = {},
                           .cyclic_pairs = {},
                           .skeleton = Skeleton(value.at("variables").get<std::vector<std::string>>())};

    auto index_of = [&entry](const std::string& factor) {
        auto it = std::find(entry.variables.begin(), entry.variables.end(), factor);
        if (it == entry.variables.end())
            throw std::invalid_argument("ground truth edge references unknown factor " + factor);
        return static_cast<int>(it - entry.variables.begin());
    };

    std::vector<Edge> undirected;
    for (const auto& edge : value.at("edges")) {
        int a = index_of(edge[0].get<std::string>());
        int b = index_of(edge[1].get<std::string>());
        if (entry.directed) entry.arrows.emplace_back(a, b);
        undirected.push_back(make_edge(a, b));
    }
    entry.skeleton = Skeleton(entry.variables, undirected);

    if (value.contains("cyclic_pairs")) {
        for (const auto& pair : value.at("cyclic_pairs"))
            entry.cyclic_pairs.insert(
                make_edge(index_of(pair[0].get<std::string>()), index_of(pair[1].get<std::string>())));
    }
    return entry;
}

}  // namespace lacr
