#pragma once

#include <stdexcept>
#include <string>

namespace lacr {

enum class KbKind { kBackground, kDocument };

// A tagged evidence source: the model's background knowledge or a retrieved
// document.
struct KnowledgeBase {
    KbKind kind = KbKind::kBackground;
    std::string document_id;  // DOCUMENT only
    std::string source;       // "full_text" | "abstract" for DOCUMENT
    std::string text;         // DOCUMENT only, non-empty

    static KnowledgeBase background() { return {}; }

    static KnowledgeBase document(std::string id, std::string source, std::string text) {
        if (text.empty()) throw std::invalid_argument("document knowledge base needs text");
        return {KbKind::kDocument, std::move(id), std::move(source), std::move(text)};
    }

    bool is_background() const { return kind == KbKind::kBackground; }

    // Vote-source label: "BG" or "doc:<id>".
    std::string label() const { return is_background() ? "BG" : "doc:" + document_id; }
};

}  // namespace lacr
