#pragma once

// Minimal XML reader covering what InkML dataset files use: elements,
// attributes, character data, comments, CDATA, processing instructions and
// a skipped DOCTYPE. No namespaces resolution beyond prefix stripping.

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace inkrep::xml {

struct Element {
    std::string name;  // local name, namespace prefix removed
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<std::unique_ptr<Element>> children;
    std::string text;  // concatenated direct character data
    std::size_t offset = 0;  // byte offset of '<'

    const std::string* attribute(std::string_view key) const;
};

/// Parses a whole document and returns its root element. Throws ParseError
/// (Unit::Byte) on malformed input.
std::unique_ptr<Element> parse(std::string_view document);

}  // namespace inkrep::xml
