#include "inkrep/target.hpp"

#include "inkrep/error.hpp"

namespace inkrep {

std::string_view to_string(TargetVocabulary v) { return v == TargetVocabulary::Latex ? "latex" : "character"; }

TargetVocabulary parse_target_vocabulary(std::string_view name) {
    if (name == "character") return TargetVocabulary::Character;
    if (name == "latex") return TargetVocabulary::Latex;
    throw SchemaError("unknown target vocabulary '" + std::string(name) + "'");
}

TargetConfig TargetConfig::for_vocabulary(TargetVocabulary v) {
    return {v, v == TargetVocabulary::Character};
}

std::vector<std::string> utf8_characters(std::string_view text) {
    std::vector<std::string> out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        const auto lead = static_cast<unsigned char>(text[i]);
        std::size_t len = 1;
        if (lead >= 0xF0 && lead <= 0xF4) len = 4;
        else if (lead >= 0xE0) len = lead >= 0xF0 ? 1 : 3;
        else if (lead >= 0xC2) len = 2;
        if (i + len > text.size()) len = 1;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
                len = 1;
                break;
            }
        }
        out.emplace_back(text.substr(i, len));
        i += len;
    }
    return out;
}

std::string encode_target(std::string_view label, const TargetConfig& config) {
    if (!config.space_separated) return std::string(label);
    std::vector<std::string> parts;
    if (config.vocabulary == TargetVocabulary::Latex) {
        parts = latex_tokenize(label);
    } else {
        parts = utf8_characters(label);
        for (auto& p : parts)
            if (p == " ") p = kSpaceSentinel;
    }
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ' ';
        out += p;
    }
    return out;
}

std::string decode_target(std::string_view model_output, const TargetConfig& config) {
    if (!config.space_separated) return std::string(model_output);
    std::string out;
    std::size_t i = 0;
    while (i <= model_output.size()) {
        auto next = model_output.find(' ', i);
        if (next == std::string_view::npos) next = model_output.size();
        std::string_view tok = model_output.substr(i, next - i);
        if (tok == kSpaceSentinel)
            out += ' ';
        else
            out += tok;
        i = next + 1;
    }
    return out;
}

std::vector<std::string> target_tokens(std::string_view label, TargetVocabulary vocabulary) {
    return vocabulary == TargetVocabulary::Latex ? latex_tokenize(label) : utf8_characters(label);
}

}  // namespace inkrep
