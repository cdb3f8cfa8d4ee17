#include <algorithm>
#include <cctype>
#include <string_view>
#include <unordered_map>

#include "inkrep/target.hpp"

namespace inkrep {

namespace detail {
extern const std::string_view kLatexVocabularyText;
}

namespace {

std::vector<std::string> parse_vocabulary(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        auto nl = text.find('\n', i);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(i, nl - i);
        i = nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.starts_with("# ")) continue;
        out.emplace_back(line);
    }
    return out;
}

// Tokens bucketed by first byte, longest first.
struct Matcher {
    std::unordered_map<char, std::vector<std::string_view>> by_first;

    explicit Matcher(const std::vector<std::string>& vocab) {
        for (const auto& t : vocab) by_first[t.front()].push_back(t);
        for (auto& [_, list] : by_first)
            std::stable_sort(list.begin(), list.end(),
                             [](std::string_view a, std::string_view b) { return a.size() > b.size(); });
    }
};

const Matcher& matcher() {
    static const Matcher m(latex_vocabulary());
    return m;
}

}  // namespace

const std::vector<std::string>& latex_vocabulary() {
    static const std::vector<std::string> vocab = parse_vocabulary(detail::kLatexVocabularyText);
    return vocab;
}

std::vector<std::string> latex_tokenize(std::string_view label) {
    const Matcher& m = matcher();
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < label.size()) {
        if (std::isspace(static_cast<unsigned char>(label[i]))) {
            ++i;
            continue;
        }
        std::string_view rest = label.substr(i);
        std::string_view match;
        if (auto it = m.by_first.find(label[i]); it != m.by_first.end()) {
            for (std::string_view cand : it->second) {
                if (rest.starts_with(cand)) {
                    match = cand;
                    break;
                }
            }
        }
        if (match.empty()) {
            // Unknown: one UTF-8 character.
            match = utf8_characters(rest.substr(0, std::min<std::size_t>(4, rest.size()))).front();
        }
        out.emplace_back(match);
        i += match.size();
    }
    return out;
}

}  // namespace inkrep
