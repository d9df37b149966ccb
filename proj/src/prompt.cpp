#include "lacr/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lacr {

namespace {

bool placeholder_char(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

// Walks the text calling `on_placeholder(name)` / `on_literal(chunk)`.
template <typename OnPlaceholder, typename OnLiteral>
void scan(const std::string& text, OnPlaceholder on_placeholder, OnLiteral on_literal) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t open = text.find('{', pos);
        if (open == std::string::npos) {
            on_literal(text.substr(pos));
            return;
        }
        std::size_t close = open + 1;
        while (close < text.size() && placeholder_char(text[close])) ++close;
        if (close < text.size() && text[close] == '}' && close > open + 1) {
            on_literal(text.substr(pos, open - pos));
            on_placeholder(text.substr(open + 1, close - open - 1));
            pos = close + 1;
        } else {
            on_literal(text.substr(pos, open + 1 - pos));
            pos = open + 1;
        }
    }
}

}  // namespace

PromptTemplate::PromptTemplate(std::string name, std::string text)
    : name_(std::move(name)), text_(std::move(text)) {}

std::vector<std::string> PromptTemplate::placeholders() const {
    std::vector<std::string> out;
    scan(
        text_,
        [&out](const std::string& name) {
            if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
        },
        [](const std::string&) {});
    return out;
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& bindings) const {
    std::string out;
    out.reserve(text_.size());
    scan(
        text_,
        [&](const std::string& placeholder) {
            auto it = bindings.find(placeholder);
            if (it == bindings.end())
                throw TemplateError("template '" + name_ + "' has unbound placeholder {" +
                                    placeholder + "}");
            out += it->second;
        },
        [&out](const std::string& literal) { out += literal; });
    return out;
}

PromptLibrary::PromptLibrary(const std::string& directory) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(directory))
        throw TemplateError("prompt directory not found: " + directory);
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream text;
        text << in.rdbuf();
        const std::string stem = entry.path().stem().string();
        templates_.emplace(stem, PromptTemplate(stem, text.str()));
    }
    if (templates_.empty()) throw TemplateError("no templates in " + directory);
}

const PromptTemplate& PromptLibrary::get(const std::string& name) const {
    auto it = templates_.find(name);
    if (it == templates_.end()) throw TemplateError("unknown template: " + name);
    return it->second;
}

std::vector<std::string> PromptLibrary::names() const {
    std::vector<std::string> out;
    for (const auto& [name, t] : templates_) out.push_back(name);
    return out;
}

}  // namespace lacr
