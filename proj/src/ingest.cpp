#include "inkrep/ingest.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

#include "inkrep/error.hpp"
#include "xml.hpp"

namespace inkrep {

using nlohmann::json;

void rebase_time(RawInk& ink) {
    if (ink.strokes.empty() || ink.strokes.front().empty()) return;
    const double t0 = ink.strokes.front().front().t;
    if (t0 == 0.0) return;
    for (auto& stroke : ink.strokes)
        for (auto& p : stroke) p.t -= t0;
}

namespace {

void check_valid(const RawInk& ink, const std::string& context) {
    auto problems = validate(ink);
    if (problems.empty()) return;
    std::string msg = context.empty() ? problems.front() : context + ": " + problems.front();
    if (problems.size() > 1) msg += " (+" + std::to_string(problems.size() - 1) + " more)";
    throw SchemaError(msg);
}

std::string line_context(std::size_t line) { return "line " + std::to_string(line); }

}  // namespace

RawInk ink_from_json_line(std::string_view line, std::size_t line_number) {
    json record;
    try {
        record = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(ParseError::Unit::Line, line_number, std::string("invalid JSON: ") + e.what());
    }
    const auto ctx = line_context(line_number);
    if (!record.is_object()) throw SchemaError(ctx + ": record must be a JSON object");
    for (const auto& [key, _] : record.items()) {
        if (key != "strokes" && key != "label" && key != "metadata")
            throw SchemaError(ctx + ": unknown field \"" + key + "\"");
    }
    auto strokes_it = record.find("strokes");
    if (strokes_it == record.end()) throw SchemaError(ctx + ": missing \"strokes\"");
    if (!strokes_it->is_array()) throw SchemaError(ctx + ": \"strokes\" must be an array");

    RawInk ink;
    ink.strokes.reserve(strokes_it->size());
    for (std::size_t s = 0; s < strokes_it->size(); ++s) {
        const auto& jstroke = (*strokes_it)[s];
        if (!jstroke.is_array())
            throw SchemaError(ctx + ": stroke " + std::to_string(s) + " must be an array");
        Stroke stroke;
        stroke.reserve(jstroke.size());
        for (std::size_t p = 0; p < jstroke.size(); ++p) {
            const auto& jp = jstroke[p];
            if (!jp.is_array() || jp.size() != 3 || !jp[0].is_number() || !jp[1].is_number() ||
                !jp[2].is_number()) {
                throw SchemaError(ctx + ": stroke " + std::to_string(s) + ", point " + std::to_string(p) +
                                  ": expected [x, y, t] numbers");
            }
            stroke.push_back({jp[0].get<double>(), jp[1].get<double>(), jp[2].get<double>()});
        }
        ink.strokes.push_back(std::move(stroke));
    }

    if (auto it = record.find("label"); it != record.end() && !it->is_null()) {
        if (!it->is_string()) throw SchemaError(ctx + ": \"label\" must be a string");
        ink.label = it->get<std::string>();
    }
    if (auto it = record.find("metadata"); it != record.end() && !it->is_null()) {
        if (!it->is_object()) throw SchemaError(ctx + ": \"metadata\" must be an object");
        for (const auto& [key, value] : it->items()) {
            if (!value.is_string())
                throw SchemaError(ctx + ": metadata value for \"" + key + "\" must be a string");
            ink.metadata.emplace(key, value.get<std::string>());
        }
    }

    rebase_time(ink);
    check_valid(ink, ctx);
    return ink;
}

std::string ink_to_json_line(const RawInk& ink) {
    json strokes = json::array();
    for (const auto& stroke : ink.strokes) {
        json js = json::array();
        for (const auto& p : stroke) js.push_back(json::array({p.x, p.y, p.t}));
        strokes.push_back(std::move(js));
    }
    json record = json::object();
    record["strokes"] = std::move(strokes);
    if (ink.label) record["label"] = *ink.label;
    if (!ink.metadata.empty()) record["metadata"] = ink.metadata;
    return record.dump();
}

JsonlReader::JsonlReader(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) throw IoError("cannot open " + path.string());
}

std::optional<RawInk> JsonlReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        return ink_from_json_line(line, line_);
    }
    if (in_.bad()) throw IoError("read failure on " + path_.string());
    return std::nullopt;
}

JsonlWriter::JsonlWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
}

void JsonlWriter::write(const RawInk& ink) {
    out_ << ink_to_json_line(ink) << '\n';
    if (!out_) throw IoError("write failure on " + path_.string());
    ++count_;
}

std::vector<RawInk> read_jsonl(const std::filesystem::path& path) {
    JsonlReader reader(path);
    std::vector<RawInk> out;
    while (auto ink = reader.next()) out.push_back(std::move(*ink));
    return out;
}

std::size_t write_jsonl(std::span<const RawInk> inks, const std::filesystem::path& path) {
    JsonlWriter writer(path);
    for (const auto& ink : inks) writer.write(ink);
    return writer.count();
}

// InkML ----------------------------------------------------------------------

namespace {

const char* const kUnsupportedInkml[] = {
    "brush", "canvas", "canvasTransform", "context", "definitions", "inkSource",
    "traceView", "timestamp", "mapping", "bind", "table", "matrix",
};

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

Stroke parse_trace(std::string_view text, std::size_t trace_index) {
    Stroke stroke;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view chunk = text.substr(start, comma - start);
        start = comma + 1;

        double values[3];
        std::size_t n = 0;
        std::size_t i = 0;
        while (i < chunk.size()) {
            while (i < chunk.size() && std::isspace(static_cast<unsigned char>(chunk[i]))) ++i;
            if (i == chunk.size()) break;
            std::size_t j = i;
            while (j < chunk.size() && !std::isspace(static_cast<unsigned char>(chunk[j]))) ++j;
            std::string_view tok = chunk.substr(i, j - i);
            double v = 0.0;
            auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (r.ec != std::errc{} || r.ptr != tok.data() + tok.size())
                throw ParseError(ParseError::Unit::Trace, trace_index,
                                 "non-numeric token '" + std::string(tok) + "'");
            if (n < 3) values[n] = v;
            ++n;
            i = j;
        }
        if (n == 0) {
            if (comma == text.size()) break;  // trailing comma or empty trace
            throw ParseError(ParseError::Unit::Trace, trace_index, "empty point");
        }
        if (n < 3)
            throw ParseError(ParseError::Unit::Trace, trace_index,
                             "point has " + std::to_string(n) + " channels, expected x y t");
        stroke.push_back({values[0], values[1], values[2]});
        if (comma == text.size()) break;
    }
    if (stroke.empty()) throw ParseError(ParseError::Unit::Trace, trace_index, "empty trace");
    return stroke;
}

void check_trace_format(const xml::Element& fmt) {
    static const char* const kExpected[] = {"X", "Y", "T"};
    std::size_t i = 0;
    for (const auto& ch : fmt.children) {
        if (ch->name != "channel") continue;
        const std::string* name = ch->attribute("name");
        if (i < 3 && (name == nullptr || *name != kExpected[i]))
            throw SchemaError("unsupported InkML traceFormat: channels must start with X, Y, T");
        ++i;
    }
}

struct InkCollector {
    const InkmlOptions& options;
    RawInk ink;
    std::vector<std::pair<std::string, std::string>> annotations;
    std::size_t trace_index = 0;

    void visit(const xml::Element& el) {
        for (const char* bad : kUnsupportedInkml) {
            if (el.name == bad)
                throw SchemaError("unsupported InkML element <" + el.name + "> at byte offset " +
                                  std::to_string(el.offset));
        }
        if (el.name == "trace") {
            ink.strokes.push_back(parse_trace(el.text, trace_index++));
            return;
        }
        if (el.name == "annotation") {
            const std::string* type = el.attribute("type");
            annotations.emplace_back(type ? *type : std::string{}, trim(el.text));
            return;
        }
        if (el.name == "traceFormat") {
            check_trace_format(el);
            return;
        }
        if (el.name == "annotationXML") return;
        for (const auto& child : el.children) visit(*child);
    }

    RawInk finish(const std::string& default_id) {
        for (const auto& wanted : options.label_annotation_types) {
            for (const auto& [type, text] : annotations) {
                if (type == wanted) {
                    ink.label = text;
                    break;
                }
            }
            if (ink.label) break;
        }
        for (const auto& [type, text] : annotations) {
            if (type.empty()) continue;
            ink.metadata.emplace(type, text);
        }
        if (!ink.metadata.contains("id")) {
            if (auto it = ink.metadata.find("sampleId"); it != ink.metadata.end())
                ink.metadata["id"] = it->second;
            else if (!default_id.empty())
                ink.metadata["id"] = default_id;
        }
        rebase_time(ink);
        return std::move(ink);
    }
};

void collect_inks(const xml::Element& el, const InkmlOptions& options, const std::string& default_id,
                  std::vector<RawInk>& out) {
    if (el.name == "ink") {
        InkCollector c{options, {}, {}, 0};
        for (const auto& child : el.children) c.visit(*child);
        std::string id = default_id;
        if (!out.empty() && !id.empty()) id += "#" + std::to_string(out.size());
        RawInk ink = c.finish(id);
        check_valid(ink, default_id);
        out.push_back(std::move(ink));
        return;
    }
    for (const auto& child : el.children) collect_inks(*child, options, default_id, out);
}

}  // namespace

std::vector<RawInk> parse_inkml(std::string_view document, const InkmlOptions& options,
                                const std::string& default_id) {
    auto root = xml::parse(document);
    std::vector<RawInk> out;
    collect_inks(*root, options, default_id, out);
    if (out.empty()) throw SchemaError("no <ink> element in document");
    return out;
}

std::vector<RawInk> read_inkml(const std::filesystem::path& path, const InkmlOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_inkml(buf.str(), options, path.stem().string());
    } catch (const ParseError& e) {
        throw e.with_context(path.string());
    } catch (const SchemaError& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

}  // namespace inkrep
