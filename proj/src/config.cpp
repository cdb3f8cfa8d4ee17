#include "inkrep/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "inkrep/error.hpp"

namespace inkrep {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::string_view section, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) throw SchemaError("config: \"" + std::string(section) + "\" must be an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) throw SchemaError("config: unknown key \"" + std::string(section) + "." + key + "\"");
    }
}

template <class T>
void read(const json& obj, const char* key, T& out, std::string_view section) {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
        out = it->get<T>();
    } catch (const json::exception&) {
        throw SchemaError("config: bad value for \"" + std::string(section) + "." + key + "\"");
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

void PipelineConfig::check() const {
    preprocess.check();
    tokenizer.check();
    render.check();
    if (tokenizer.grid_size != preprocess.grid_size)
        throw SchemaError("config: tokenizer grid size differs from preprocess.grid_size");
    if (!dataset.sources.empty()) MixSpec{dataset.sources, dataset.seed}.check();
}

PipelineConfig parse_pipeline_config(std::string_view text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("config: invalid JSON: ") + e.what());
    }
    reject_unknown(root, "<root>", {"preprocess", "tokenizer", "render", "target", "dataset"});

    PipelineConfig cfg;
    if (auto it = root.find("preprocess"); it != root.end()) {
        reject_unknown(*it, "preprocess", {"time_delta_ms", "grid_size"});
        read(*it, "time_delta_ms", cfg.preprocess.time_delta_ms, "preprocess");
        read(*it, "grid_size", cfg.preprocess.grid_size, "preprocess");
    }
    cfg.tokenizer.grid_size = cfg.preprocess.grid_size;
    if (auto it = root.find("tokenizer"); it != root.end()) {
        reject_unknown(*it, "tokenizer", {"mode", "emission", "stroke_separator", "codebook"});
        std::string s;
        if (it->contains("mode")) {
            read(*it, "mode", s, "tokenizer");
            cfg.tokenizer.mode = parse_coordinate_mode(s);
        }
        if (it->contains("emission")) {
            read(*it, "emission", s, "tokenizer");
            cfg.tokenizer.emission = parse_emission(s);
        }
        read(*it, "stroke_separator", cfg.tokenizer.stroke_separator, "tokenizer");
        if (it->contains("codebook")) {
            read(*it, "codebook", s, "tokenizer");
            cfg.codebook_path = resolve(base_dir, s);
        }
    }
    if (auto it = root.find("render"); it != root.end()) {
        reject_unknown(*it, "render", {"image_size", "color_mode", "line_count", "stroke_width", "margin"});
        read(*it, "image_size", cfg.render.image_size, "render");
        read(*it, "line_count", cfg.render.line_count, "render");
        read(*it, "stroke_width", cfg.render.stroke_width, "render");
        read(*it, "margin", cfg.render.margin, "render");
        if (it->contains("color_mode")) {
            std::string s;
            read(*it, "color_mode", s, "render");
            cfg.render.color_mode = parse_color_mode(s);
        }
    }
    if (auto it = root.find("target"); it != root.end()) {
        reject_unknown(*it, "target", {"vocabulary", "space_separated"});
        if (it->contains("vocabulary")) {
            std::string s;
            read(*it, "vocabulary", s, "target");
            cfg.target = TargetConfig::for_vocabulary(parse_target_vocabulary(s));
        }
        read(*it, "space_separated", cfg.target.space_separated, "target");
    }
    if (auto it = root.find("dataset"); it != root.end()) {
        reject_unknown(*it, "dataset", {"sources", "seed", "count", "max_tokens"});
        read(*it, "seed", cfg.dataset.seed, "dataset");
        read(*it, "count", cfg.dataset.count, "dataset");
        read(*it, "max_tokens", cfg.dataset.max_tokens, "dataset");
        if (auto src = it->find("sources"); src != it->end()) {
            if (!src->is_array()) throw SchemaError("config: \"dataset.sources\" must be an array");
            for (const auto& s : *src) {
                reject_unknown(s, "dataset.sources[]", {"name", "path", "weight"});
                MixSource m;
                std::string path;
                read(s, "name", m.name, "dataset.sources[]");
                read(s, "path", path, "dataset.sources[]");
                read(s, "weight", m.weight, "dataset.sources[]");
                if (path.empty()) throw SchemaError("config: dataset source needs a \"path\"");
                m.path = resolve(base_dir, path);
                if (m.name.empty()) m.name = m.path.stem().string();
                cfg.dataset.sources.push_back(std::move(m));
            }
        }
    }
    cfg.check();
    return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_pipeline_config(buf.str(), path.parent_path());
}

std::string PipelineConfig::to_json() const {
    nlohmann::ordered_json j;
    j["preprocess"] = {{"time_delta_ms", preprocess.time_delta_ms}, {"grid_size", preprocess.grid_size}};
    j["tokenizer"] = {{"mode", to_string(tokenizer.mode)},
                      {"emission", to_string(tokenizer.emission)},
                      {"stroke_separator", tokenizer.stroke_separator}};
    if (codebook_path) j["tokenizer"]["codebook"] = codebook_path->string();
    j["render"] = {{"image_size", render.image_size},
                   {"color_mode", to_string(render.color_mode)},
                   {"line_count", render.line_count},
                   {"stroke_width", render.stroke_width},
                   {"margin", render.margin}};
    j["target"] = {{"vocabulary", to_string(target.vocabulary)}, {"space_separated", target.space_separated}};
    nlohmann::ordered_json sources = nlohmann::ordered_json::array();
    for (const auto& s : dataset.sources)
        sources.push_back({{"name", s.name}, {"path", s.path.string()}, {"weight", s.weight}});
    j["dataset"] = {{"sources", sources},
                    {"seed", dataset.seed},
                    {"count", dataset.count},
                    {"max_tokens", dataset.max_tokens}};
    return j.dump(2);
}

}  // namespace inkrep
