#include "lacr/verdict.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lacr {

std::string to_string(VerdictValue value) {
    switch (value) {
        case VerdictValue::kIndependent: return "INDEPENDENT";
        case VerdictValue::kDirectlyAssociated: return "DIRECTLY_ASSOCIATED";
        case VerdictValue::kIndirectlyAssociated: return "INDIRECTLY_ASSOCIATED";
        case VerdictValue::kUnknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

std::string to_string(Direction value) {
    switch (value) {
        case Direction::kACausesB: return "A_CAUSES_B";
        case Direction::kBCausesA: return "B_CAUSES_A";
        case Direction::kUnknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

namespace {

const char* const kHeaders[] = {"Thoughts:", "Answer:", "Reference:", "Intermediary Factors:",
                                "Document Identifier:"};

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::size_t next_header_after(const std::string& text, std::size_t from) {
    std::size_t best = text.size();
    for (const char* header : kHeaders) {
        const std::size_t pos = text.find(header, from);
        if (pos != std::string::npos) best = std::min(best, pos);
    }
    return best;
}

// Section body following the LAST occurrence of `header`, cut at the next
// known header.
std::string section_after(const std::string& text, const std::string& header) {
    const std::size_t pos = text.rfind(header);
    if (pos == std::string::npos) return "";
    const std::size_t begin = pos + header.size();
    return text.substr(begin, next_header_after(text, begin) - begin);
}

// Drops format-fence lines (``/```/$$) and bracketed skip-instructions.
std::string clean_section(const std::string& raw) {
    std::istringstream in(raw);
    std::string line, out;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.find_first_not_of("`$") == std::string::npos) continue;
        if (t.front() == '[' && t.back() == ']') continue;
        if (!out.empty()) out += "\n";
        out += t;
    }
    return out;
}

// Distinct option letters "(X)" within the answer region; falls back to the
// whole response when no "Answer:" header is present.
std::vector<char> option_letters(const std::string& response, const std::string& allowed) {
    std::string region = section_after(response, "Answer:");
    if (region.empty() && response.rfind("Answer:") == std::string::npos) region = response;
    std::vector<char> found;
    for (std::size_t pos = 0; pos + 2 < region.size(); ++pos) {
        if (region[pos] != '(' || region[pos + 2] != ')') continue;
        const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(region[pos + 1])));
        if (allowed.find(letter) == std::string::npos) continue;
        if (std::find(found.begin(), found.end(), letter) == found.end()) found.push_back(letter);
    }
    return found;
}

std::string extract_reference(const std::string& response) {
    return clean_section(section_after(response, "Reference:"));
}

}  // namespace

AssociationAnswer parse_association_answer(const std::string& response) {
    AssociationAnswer out;
    const auto letters = option_letters(response, "ABC");
    if (letters.size() != 1) return out;  // none or conflicting
    out.parse_ok = true;
    switch (letters[0]) {
        case 'A': out.value = Association::kAssociated; break;
        case 'B': out.value = Association::kIndependent; break;
        default: out.value = Association::kUnknown; break;
    }
    if (out.value != Association::kUnknown) out.reference = extract_reference(response);
    return out;
}

TypeAnswer parse_type_answer(const std::string& response,
                             const std::vector<std::string>& allowed_third_factors) {
    TypeAnswer out;
    const auto letters = option_letters(response, "DEC");
    if (letters.size() != 1) return out;
    out.parse_ok = true;
    switch (letters[0]) {
        case 'D': out.value = AssociationType::kDirect; break;
        case 'E': out.value = AssociationType::kIndirect; break;
        default: out.value = AssociationType::kUnknown; break;
    }
    if (out.value == AssociationType::kUnknown) return out;

    out.reference = extract_reference(response);
    if (out.value == AssociationType::kIndirect) {
        const std::string body = clean_section(section_after(response, "Intermediary Factors:"));
        std::string item;
        std::istringstream in(body);
        while (std::getline(in, item, ',')) {
            // Items may also be newline-separated within the section.
            std::istringstream lines(item);
            std::string piece;
            while (std::getline(lines, piece)) {
                piece = trim(piece);
                if (piece.empty()) continue;
                out.raw_intermediaries.push_back(piece);
                for (const auto& factor : allowed_third_factors) {
                    if (lower(factor) == lower(piece)) {
                        if (std::find(out.matched_intermediaries.begin(),
                                      out.matched_intermediaries.end(),
                                      factor) == out.matched_intermediaries.end())
                            out.matched_intermediaries.push_back(factor);
                        break;
                    }
                }
            }
        }
    }
    return out;
}

DirectionAnswer parse_direction_answer(const std::string& response) {
    DirectionAnswer out;
    const auto letters = option_letters(response, "ABC");
    if (letters.size() != 1) return out;
    out.parse_ok = true;
    switch (letters[0]) {
        case 'A': out.value = Direction::kACausesB; break;
        case 'B': out.value = Direction::kBCausesA; break;
        default: out.value = Direction::kUnknown; break;
    }
    if (out.value != Direction::kUnknown) out.reference = extract_reference(response);
    return out;
}

}  // namespace lacr
