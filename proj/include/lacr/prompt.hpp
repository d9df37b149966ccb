#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lacr {

class TemplateError : public std::runtime_error {
public:
    explicit TemplateError(const std::string& what) : std::runtime_error(what) {}
};

// Text with {name} placeholders. Rendering is byte-exact substitution; an
// unbound placeholder is an error naming it.
class PromptTemplate {
public:
    PromptTemplate(std::string name, std::string text);

    const std::string& name() const { return name_; }
    const std::string& text() const { return text_; }
    std::vector<std::string> placeholders() const;

    std::string render(const std::map<std::string, std::string>& bindings) const;

private:
    std::string name_;
    std::string text_;
};

// All templates from a prompts/ directory, keyed by file stem.
class PromptLibrary {
public:
    explicit PromptLibrary(const std::string& directory);

    const PromptTemplate& get(const std::string& name) const;
    std::vector<std::string> names() const;

private:
    std::map<std::string, PromptTemplate> templates_;
};

}  // namespace lacr
