#pragma once

#include <string>
#include <vector>

namespace lacr {

enum class Association { kAssociated, kIndependent, kUnknown };
enum class AssociationType { kDirect, kIndirect, kUnknown };
enum class Direction { kACausesB, kBCausesA, kUnknown };

enum class VerdictValue {
    kIndependent,
    kDirectlyAssociated,
    kIndirectlyAssociated,
    kUnknown,
};

std::string to_string(VerdictValue value);
std::string to_string(Direction value);

// A knowledge base's final classification of a pair.
struct Verdict {
    VerdictValue value = VerdictValue::kUnknown;
    std::vector<std::string> intermediaries;  // only for INDIRECTLY_ASSOCIATED
    std::string reference;                    // optional supporting sentence
    std::vector<std::string> flags;

    bool usable() const { return value != VerdictValue::kUnknown; }
};

struct OrientationVerdict {
    Direction value = Direction::kUnknown;
    std::string reference;
    std::vector<std::string> flags;

    bool usable() const { return value != Direction::kUnknown; }
};

struct AssociationAnswer {
    Association value = Association::kUnknown;
    std::string reference;
    bool parse_ok = false;
};

struct TypeAnswer {
    AssociationType value = AssociationType::kUnknown;
    std::vector<std::string> matched_intermediaries;  // name-matched against scope
    std::vector<std::string> raw_intermediaries;      // as written by the model
    std::string reference;
    bool parse_ok = false;
};

struct DirectionAnswer {
    Direction value = Direction::kUnknown;
    std::string reference;
    bool parse_ok = false;
};

// Extracts the option letter from the "Answer:" block: A→associated,
// B→independent, C→unknown. Tolerates surrounding prose; multiple
// conflicting letters fail the parse.
AssociationAnswer parse_association_answer(const std::string& response);

// D→direct, E→indirect (with the "Intermediary Factors:" list name-matched
// case-insensitively against allowed third factors), C→unknown.
TypeAnswer parse_type_answer(const std::string& response,
                             const std::vector<std::string>& allowed_third_factors);

// A→factorA causes factorB, B→the reverse, C→unknown.
DirectionAnswer parse_direction_answer(const std::string& response);

}  // namespace lacr
