#include "xml.hpp"

#include <cctype>
#include <charconv>

#include "inkrep/error.hpp"

namespace inkrep::xml {

const std::string* Element::attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes)
        if (k == key) return &v;
    return nullptr;
}

namespace {

std::string local_name(std::string_view qname) {
    auto colon = qname.find(':');
    return std::string(colon == std::string_view::npos ? qname : qname.substr(colon + 1));
}

bool is_name_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == ':' || c == '-' || c == '.' || u >= 0x80;
}

void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

class Parser {
public:
    explicit Parser(std::string_view doc) : doc_(doc) {}

    std::unique_ptr<Element> document() {
        skip_misc();
        if (at_end() || peek() != '<') fail("expected root element");
        auto root = element();
        skip_misc();
        if (!at_end()) fail("content after root element");
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(ParseError::Unit::Byte, pos_, "XML: " + what);
    }

    bool at_end() const { return pos_ >= doc_.size(); }
    char peek() const { return doc_[pos_]; }
    bool starts_with(std::string_view s) const { return doc_.substr(pos_).starts_with(s); }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    void skip_past(std::string_view terminator, const char* what) {
        auto end = doc_.find(terminator, pos_);
        if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
        pos_ = end + terminator.size();
    }

    // Prolog, comments, PIs and DOCTYPE between top-level constructs.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<?")) {
                skip_past("?>", "processing instruction");
            } else if (starts_with("<!--")) {
                skip_past("-->", "comment");
            } else if (starts_with("<!DOCTYPE")) {
                skip_doctype();
            } else {
                return;
            }
        }
    }

    void skip_doctype() {
        int depth = 0;
        for (; !at_end(); ++pos_) {
            char c = peek();
            if (c == '[') ++depth;
            else if (c == ']') --depth;
            else if (c == '>' && depth <= 0) {
                ++pos_;
                return;
            }
        }
        fail("unterminated DOCTYPE");
    }

    std::string name() {
        std::size_t start = pos_;
        while (!at_end() && is_name_char(peek())) ++pos_;
        if (start == pos_) fail("expected a name");
        return std::string(doc_.substr(start, pos_ - start));
    }

    std::string decode_entities(std::string_view raw, std::size_t raw_offset) {
        std::string out;
        out.reserve(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out += raw[i];
                continue;
            }
            auto semi = raw.find(';', i);
            if (semi == std::string_view::npos) {
                pos_ = raw_offset + i;
                fail("unterminated entity reference");
            }
            std::string_view ent = raw.substr(i + 1, semi - i - 1);
            if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "amp") out += '&';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else if (ent.starts_with('#')) {
                unsigned long cp = 0;
                std::from_chars_result r;
                if (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X'))
                    r = std::from_chars(ent.data() + 2, ent.data() + ent.size(), cp, 16);
                else
                    r = std::from_chars(ent.data() + 1, ent.data() + ent.size(), cp, 10);
                if (r.ec != std::errc{} || r.ptr != ent.data() + ent.size() || cp > 0x10FFFF) {
                    pos_ = raw_offset + i;
                    fail("bad character reference");
                }
                append_utf8(out, cp);
            } else {
                pos_ = raw_offset + i;
                fail("unknown entity '&" + std::string(ent) + ";'");
            }
            i = semi;
        }
        return out;
    }

    std::unique_ptr<Element> element() {
        auto el = std::make_unique<Element>();
        el->offset = pos_;
        ++pos_;  // '<'
        const std::string qname = name();
        el->name = local_name(qname);

        for (;;) {
            skip_ws();
            if (at_end()) fail("unterminated start tag <" + qname + ">");
            if (starts_with("/>")) {
                pos_ += 2;
                return el;
            }
            if (peek() == '>') {
                ++pos_;
                break;
            }
            std::string key = name();
            skip_ws();
            if (at_end() || peek() != '=') fail("expected '=' after attribute " + key);
            ++pos_;
            skip_ws();
            if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
            char quote = peek();
            std::size_t start = ++pos_;
            auto end = doc_.find(quote, start);
            if (end == std::string_view::npos) fail("unterminated attribute value");
            pos_ = end + 1;
            el->attributes.emplace_back(local_name(key), decode_entities(doc_.substr(start, end - start), start));
        }

        // Content.
        for (;;) {
            if (at_end()) fail("missing end tag </" + qname + ">");
            if (starts_with("</")) {
                std::size_t tag_at = pos_;
                pos_ += 2;
                std::string closing = name();
                skip_ws();
                if (at_end() || peek() != '>') fail("malformed end tag");
                ++pos_;
                if (closing != qname) {
                    pos_ = tag_at;
                    fail("mismatched end tag </" + closing + ">, expected </" + qname + ">");
                }
                return el;
            }
            if (starts_with("<!--")) {
                skip_past("-->", "comment");
            } else if (starts_with("<![CDATA[")) {
                std::size_t start = pos_ + 9;
                skip_past("]]>", "CDATA section");
                el->text.append(doc_.substr(start, pos_ - 3 - start));
            } else if (starts_with("<?")) {
                skip_past("?>", "processing instruction");
            } else if (peek() == '<') {
                el->children.push_back(element());
            } else {
                std::size_t start = pos_;
                auto next = doc_.find('<', pos_);
                if (next == std::string_view::npos) next = doc_.size();
                pos_ = next;
                el->text += decode_entities(doc_.substr(start, next - start), start);
            }
        }
    }

    std::string_view doc_;
    std::size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<Element> parse(std::string_view document) {
    return Parser(document).document();
}

}  // namespace inkrep::xml
