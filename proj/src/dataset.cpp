#include "lacr/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lacr {

CategoricalDataset::CategoricalDataset(std::vector<std::string> names, std::vector<int> arities,
                                       std::vector<std::vector<int>> rows)
    : names_(std::move(names)), arities_(std::move(arities)), rows_(std::move(rows)) {
    if (names_.empty()) throw std::invalid_argument("dataset needs at least one variable");
    if (arities_.size() != names_.size())
        throw std::invalid_argument("arity list does not match variable list");
    if (rows_.empty()) throw std::invalid_argument("dataset needs at least one row");
    for (int a : arities_)
        if (a < 1) throw std::invalid_argument("arity must be positive");
    for (const auto& row : rows_) {
        if (row.size() != names_.size())
            throw std::invalid_argument("row width does not match variable count");
        for (std::size_t v = 0; v < row.size(); ++v) {
            if (row[v] < 0 || row[v] >= arities_[v])
                throw std::invalid_argument("cell value " + std::to_string(row[v]) +
                                            " out of range for " + names_[v]);
        }
    }
}

int CategoricalDataset::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw std::out_of_range("unknown variable: " + name);
    return static_cast<int>(it - names_.begin());
}

int CategoricalDataset::arity(int v) const {
    if (v < 0 || v >= variable_count()) throw std::out_of_range("variable index out of range");
    return arities_[v];
}

CategoricalDataset CategoricalDataset::filtered(const std::vector<bool>& keep) const {
    if (keep.size() != rows_.size())
        throw std::invalid_argument("filter mask length does not match row count");
    std::vector<std::vector<int>> kept;
    for (std::size_t r = 0; r < rows_.size(); ++r)
        if (keep[r]) kept.push_back(rows_[r]);
    return CategoricalDataset(names_, arities_, std::move(kept));
}

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

CategoricalDataset CategoricalDataset::from_csv(std::istream& in,
                                                const std::optional<nlohmann::json>& sidecar) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty CSV: missing header");
    const std::vector<std::string> names = split_csv_line(line);
    const std::size_t width = names.size();

    std::vector<std::vector<std::string>> raw;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != width)
            throw std::invalid_argument("CSV row width " + std::to_string(fields.size()) +
                                        " does not match header width " + std::to_string(width));
        raw.push_back(std::move(fields));
    }
    if (raw.empty()) throw std::invalid_argument("CSV has a header but no rows");

    // Declared levels win; otherwise integer columns are taken as codes and
    // label columns are coded in lexicographic order.
    std::vector<std::vector<std::string>> levels(width);
    std::vector<int> arities(width, 0);
    for (std::size_t v = 0; v < width; ++v) {
        if (sidecar && sidecar->contains("levels") && sidecar->at("levels").contains(names[v])) {
            levels[v] = sidecar->at("levels").at(names[v]).get<std::vector<std::string>>();
            arities[v] = static_cast<int>(levels[v].size());
            continue;
        }
        bool all_int = true;
        for (const auto& row : raw) all_int = all_int && is_integer(row[v]);
        if (all_int) {
            int max_code = 0;
            for (const auto& row : raw) max_code = std::max(max_code, std::stoi(row[v]));
            arities[v] = max_code + 1;
            if (sidecar && sidecar->contains("arities") &&
                sidecar->at("arities").contains(names[v])) {
                int declared = sidecar->at("arities").at(names[v]).get<int>();
                if (declared < arities[v])
                    throw std::invalid_argument("declared arity for " + names[v] +
                                                " is smaller than observed codes");
                arities[v] = declared;
            }
        } else {
            std::vector<std::string> seen;
            for (const auto& row : raw) seen.push_back(row[v]);
            std::sort(seen.begin(), seen.end());
            seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
            levels[v] = std::move(seen);
            arities[v] = static_cast<int>(levels[v].size());
        }
    }

    std::vector<std::vector<int>> rows;
    rows.reserve(raw.size());
    for (const auto& fields : raw) {
        std::vector<int> row(width);
        for (std::size_t v = 0; v < width; ++v) {
            if (levels[v].empty()) {
                row[v] = std::stoi(fields[v]);
            } else {
                auto it = std::find(levels[v].begin(), levels[v].end(), fields[v]);
                if (it == levels[v].end())
                    throw std::invalid_argument("value '" + fields[v] + "' not in levels of " +
                                                names[v]);
                row[v] = static_cast<int>(it - levels[v].begin());
            }
        }
        rows.push_back(std::move(row));
    }
    return CategoricalDataset(names, arities, std::move(rows));
}

CategoricalDataset CategoricalDataset::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset CSV: " + path);
    std::optional<nlohmann::json> sidecar;
    std::ifstream meta(path + ".meta.json");
    if (meta) sidecar = nlohmann::json::parse(meta);
    return from_csv(in, sidecar);
}

void CategoricalDataset::write_csv(std::ostream& out) const {
    for (std::size_t v = 0; v < names_.size(); ++v)
        out << (v ? "," : "") << names_[v];
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t v = 0; v < row.size(); ++v) out << (v ? "," : "") << row[v];
        out << "\n";
    }
}

// splitmix64; passes through zero seeds safely.
Rng::Rng(std::uint64_t seed) : state_(seed + 0x9E3779B97F4A7C15ull) {}

std::uint64_t Rng::next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int Rng::next_index(int n) {
    if (n <= 0) throw std::invalid_argument("next_index needs n > 0");
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

Rng Rng::derive(std::uint64_t root, std::uint64_t stream) {
    Rng mix(root ^ (stream * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull));
    return Rng(mix.next_u64());
}

CptModel CptModel::from_json(const nlohmann::json& value) {
    CptModel model;
    for (const auto& var : value.at("variables")) {
        const std::string name = var.at("name").get<std::string>();
        Node node;
        for (const auto& parent : var.at("parents")) {
            const std::string pname = parent.get<std::string>();
            auto it = std::find(model.names_.begin(), model.names_.end(), pname);
            if (it == model.names_.end())
                throw std::invalid_argument("CPT parent " + pname + " must precede " + name);
            node.parents.push_back(static_cast<int>(it - model.names_.begin()));
        }
        std::size_t configs = 1;
        for (int p : node.parents) configs *= model.levels_[p].size();
        node.table = var.at("cpt").get<std::vector<std::vector<double>>>();
        if (node.table.size() != configs)
            throw std::invalid_argument("CPT of " + name + " has " +
                                        std::to_string(node.table.size()) + " rows, expected " +
                                        std::to_string(configs));
        auto lv = var.at("levels").get<std::vector<std::string>>();
        for (const auto& dist : node.table) {
            if (dist.size() != lv.size())
                throw std::invalid_argument("CPT row width mismatch for " + name);
            double total = 0;
            for (double p : dist) {
                if (p < 0) throw std::invalid_argument("negative probability in CPT of " + name);
                total += p;
            }
            if (std::abs(total - 1.0) > 1e-9)
                throw std::invalid_argument("CPT row of " + name + " does not sum to 1");
        }
        model.names_.push_back(name);
        model.levels_.push_back(std::move(lv));
        model.nodes_.push_back(std::move(node));
    }
    if (model.names_.empty()) throw std::invalid_argument("CPT model has no variables");
    return model;
}

CptModel CptModel::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open CPT model: " + path);
    return from_json(nlohmann::json::parse(in));
}

CategoricalDataset CptModel::sample(std::size_t rows, std::uint64_t seed) const {
    Rng rng(seed);
    const int n = static_cast<int>(names_.size());
    std::vector<int> arities;
    arities.reserve(n);
    for (const auto& lv : levels_) arities.push_back(static_cast<int>(lv.size()));

    std::vector<std::vector<int>> data(rows, std::vector<int>(n, 0));
    for (auto& row : data) {
        for (int v = 0; v < n; ++v) {
            const Node& node = nodes_[v];
            std::size_t config = 0;
            for (int p : node.parents) config = config * levels_[p].size() + row[p];
            const auto& dist = node.table[config];
            double u = rng.next_double();
            double acc = 0;
            int code = static_cast<int>(dist.size()) - 1;
            for (std::size_t k = 0; k < dist.size(); ++k) {
                acc += dist[k];
                if (u < acc) {
                    code = static_cast<int>(k);
                    break;
                }
            }
            row[v] = code;
        }
    }
    return CategoricalDataset(names_, arities, std::move(data));
}

}  // namespace lacr
