#include "inkrep/cer.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "inkrep/error.hpp"
#include "inkrep/parallel.hpp"

namespace inkrep {

std::size_t edit_distance(std::span<const std::string> reference, std::span<const std::string> hypothesis) {
    // Single-row DP over the shorter side.
    if (reference.size() < hypothesis.size()) std::swap(reference, hypothesis);
    std::vector<std::size_t> row(hypothesis.size() + 1);
    std::iota(row.begin(), row.end(), std::size_t{0});
    for (std::size_t i = 1; i <= reference.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= hypothesis.size(); ++j) {
            const std::size_t up = row[j];
            const std::size_t sub = diag + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
            row[j] = std::min({up + 1, row[j - 1] + 1, sub});
            diag = up;
        }
    }
    return row.back();
}

double cer(std::span<const std::string> reference, std::span<const std::string> hypothesis) {
    if (reference.empty()) throw SchemaError("CER is undefined for an empty reference");
    return static_cast<double>(edit_distance(reference, hypothesis)) / static_cast<double>(reference.size());
}

double cer(std::string_view reference, std::string_view hypothesis) {
    const auto r = utf8_characters(reference);
    const auto h = utf8_characters(hypothesis);
    return cer(r, h);
}

CerReport corpus_cer(std::span<const CerPair> pairs, const TargetConfig& config) {
    CerReport report;
    report.samples.resize(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        CerSample& s = report.samples[i];
        s.index = i;
        s.reference = pairs[i].reference;
        s.hypothesis = pairs[i].hypothesis;
        try {
            const auto ref = target_tokens(pairs[i].reference, config.vocabulary);
            const auto hyp = target_tokens(decode_target(pairs[i].hypothesis, config), config.vocabulary);
            if (ref.empty()) throw SchemaError("empty reference");
            s.distance = edit_distance(ref, hyp);
            s.reference_length = ref.size();
            s.cer = static_cast<double>(s.distance) / static_cast<double>(s.reference_length);
        } catch (const std::exception& e) {
            s.error = e.what();
        }
    });
    for (const auto& s : report.samples) {
        if (!s.error.empty()) {
            ++report.error_count;
            continue;
        }
        report.total_distance += s.distance;
        report.total_reference_length += s.reference_length;
    }
    if (report.total_reference_length > 0)
        report.aggregate =
            static_cast<double>(report.total_distance) / static_cast<double>(report.total_reference_length);
    return report;
}

std::string CerReport::to_json() const {
    nlohmann::json j;
    j["aggregate_cer"] = aggregate ? nlohmann::json(*aggregate) : nlohmann::json(nullptr);
    j["total_distance"] = total_distance;
    j["total_reference_length"] = total_reference_length;
    j["error_count"] = error_count;
    j["samples"] = nlohmann::json::array();
    for (const auto& s : samples) {
        nlohmann::json row{{"index", s.index}, {"reference", s.reference}, {"hypothesis", s.hypothesis}};
        if (s.error.empty()) {
            row["distance"] = s.distance;
            row["reference_length"] = s.reference_length;
            row["cer"] = *s.cer;
        } else {
            row["error"] = s.error;
        }
        j["samples"].push_back(std::move(row));
    }
    return j.dump(2);
}

std::vector<CerPair> read_cer_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<CerPair> out;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(ParseError::Unit::Line, n, std::string("invalid JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("reference") || !j.contains("hypothesis") ||
            !j["reference"].is_string() || !j["hypothesis"].is_string())
            throw SchemaError("line " + std::to_string(n) + ": expected string fields \"reference\" and \"hypothesis\"");
        out.push_back({j["reference"].get<std::string>(), j["hypothesis"].get<std::string>()});
    }
    return out;
}

}  // namespace inkrep
