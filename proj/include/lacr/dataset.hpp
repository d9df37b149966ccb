#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace lacr {

// Rows of small-integer codes, one column per categorical variable.
class CategoricalDataset {
public:
    CategoricalDataset(std::vector<std::string> names, std::vector<int> arities,
                       std::vector<std::vector<int>> rows);

    // Headered CSV of codes or labels; sidecar JSON ({"levels": {col: [...]}}
    // or {"arities": {col: n}}) pins the coding, otherwise it is inferred
    // (integer columns as codes, label columns sorted lexicographically).
    static CategoricalDataset from_csv(std::istream& in,
                                       const std::optional<nlohmann::json>& sidecar = {});
    static CategoricalDataset from_csv_file(const std::string& path);

    int variable_count() const { return static_cast<int>(names_.size()); }
    std::size_t row_count() const { return rows_.size(); }
    const std::vector<std::string>& variable_names() const { return names_; }
    int index_of(const std::string& name) const;
    int arity(int v) const;
    int cell(std::size_t row, int v) const { return rows_[row][v]; }
    const std::vector<std::vector<int>>& rows() const { return rows_; }

    // Keeps rows where `predicate(row)` holds.
    CategoricalDataset filtered(const std::vector<bool>& keep) const;

    void write_csv(std::ostream& out) const;

private:
    std::vector<std::string> names_;
    std::vector<int> arities_;
    std::vector<std::vector<int>> rows_;
};

// Deterministic 53-bit uniform generator; avoids stdlib distribution
// implementation differences so fixed seeds reproduce everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    double next_double();                  // [0, 1)
    int next_index(int n);                 // [0, n)
    std::uint64_t next_u64();
    static Rng derive(std::uint64_t root, std::uint64_t stream);

private:
    std::uint64_t state_;
};

// Conditional-probability-table description of a categorical model, loaded
// from JSON:
//   {"variables": [{"name": "A", "levels": [...], "parents": [...],
//                   "cpt": [[p...], ...]}, ...]}
// Parents must precede children; cpt rows follow the mixed-radix order of the
// parent levels.
class CptModel {
public:
    static CptModel from_json(const nlohmann::json& value);
    static CptModel from_file(const std::string& path);

    CategoricalDataset sample(std::size_t rows, std::uint64_t seed) const;

    const std::vector<std::string>& variable_names() const { return names_; }
    const std::vector<std::string>& levels(int v) const { return levels_[v]; }

private:
    struct Node {
        std::vector<int> parents;
        std::vector<std::vector<double>> table;  // one row per parent config
    };
    std::vector<std::string> names_;
    std::vector<std::vector<std::string>> levels_;
    std::vector<Node> nodes_;
};

}  // namespace lacr
