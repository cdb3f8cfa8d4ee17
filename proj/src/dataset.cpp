#include "inkrep/dataset.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "inkrep/error.hpp"
#include "inkrep/ingest.hpp"
#include "inkrep/parallel.hpp"
#include "inkrep/random.hpp"

namespace inkrep {

void MixSpec::check() const {
    if (sources.empty()) throw SchemaError("mix: no sources");
    double total = 0.0;
    for (const auto& s : sources) {
        if (!(s.weight >= 0.0) || !std::isfinite(s.weight))
            throw SchemaError("mix: source '" + s.name + "' has an invalid weight");
        total += s.weight;
    }
    if (std::abs(total - 1.0) > 1e-9) throw SchemaError("mix: weights must sum to 1 (got " + std::to_string(total) + ")");
}

std::vector<MixDraw> mix_draws(std::span<const std::size_t> source_sizes, std::span<const double> weights,
                               std::uint64_t seed, std::size_t n) {
    if (source_sizes.size() != weights.size()) throw SchemaError("mix: sizes and weights differ in length");
    std::vector<double> cumulative(weights.size());
    double acc = 0.0;
    std::size_t last_positive = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] > 0.0) {
            if (source_sizes[i] == 0) throw SchemaError("mix: source " + std::to_string(i) + " is empty but has positive weight");
            last_positive = i;
        }
        acc += weights[i];
        cumulative[i] = acc;
    }
    if (last_positive == weights.size()) throw SchemaError("mix: all weights are zero");

    Rng rng(seed);
    std::vector<std::vector<std::size_t>> order(weights.size());
    std::vector<std::size_t> cursor(weights.size(), 0);

    std::vector<MixDraw> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = rng.uniform() * acc;
        std::size_t s = last_positive;
        for (std::size_t i = 0; i < cumulative.size(); ++i) {
            if (weights[i] > 0.0 && u < cumulative[i]) {
                s = i;
                break;
            }
        }
        auto& ord = order[s];
        if (cursor[s] == ord.size()) {
            ord.resize(source_sizes[s]);
            std::iota(ord.begin(), ord.end(), std::size_t{0});
            rng.shuffle(std::span<std::size_t>(ord));
            cursor[s] = 0;
        }
        out.push_back({s, ord[cursor[s]++]});
    }
    return out;
}

std::vector<SourcedInk> mix(const MixSpec& spec, std::size_t n) {
    spec.check();
    std::vector<std::vector<RawInk>> corpora(spec.sources.size());
    std::vector<std::size_t> sizes(spec.sources.size(), 0);
    std::vector<double> weights(spec.sources.size());
    for (std::size_t i = 0; i < spec.sources.size(); ++i) {
        weights[i] = spec.sources[i].weight;
        if (weights[i] > 0.0) corpora[i] = read_jsonl(spec.sources[i].path);
        sizes[i] = corpora[i].size();
        if (weights[i] > 0.0 && sizes[i] == 0)
            throw SchemaError("mix: source '" + spec.sources[i].name + "' is empty but has positive weight");
    }
    std::vector<SourcedInk> out;
    out.reserve(n);
    for (const auto& d : mix_draws(sizes, weights, spec.seed, n))
        out.push_back({spec.sources[d.source].name, corpora[d.source][d.record]});
    return out;
}

std::string record_to_json_line(const TrainingRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["source"] = r.source;
    j["input_text"] = r.input_text;
    j["image_path"] = r.image_path;
    j["target"] = r.target;
    j["token_count"] = r.token_count;
    j["over_budget"] = r.over_budget;
    return j.dump();
}

std::string ExportStats::to_json() const {
    nlohmann::ordered_json j;
    j["records"] = records;
    j["failures"] = failures;
    j["images"] = images;
    j["over_budget"] = over_budget;
    j["median_token_length"] = median_token_length;
    j["per_source"] = per_source;
    j["errors"] = errors;
    return j.dump(2);
}

ExportResult export_dataset(std::span<const SourcedInk> corpus, const ExportConfig& config,
                            const std::filesystem::path& out_dir, const TokenCounter& counter) {
    config.preprocess.check();
    config.tokenizer.check();
    config.render.check();
    const bool histogram = config.tokenizer.mode == CoordinateMode::Histogram;
    if (histogram && !config.codebook) throw SchemaError("export: histogram tokenizer needs a codebook");

    const auto image_dir = out_dir / "images";
    std::error_code ec;
    std::filesystem::create_directories(image_dir, ec);
    if (ec) throw IoError("cannot create " + image_dir.string() + ": " + ec.message());

    TokenizerConfig text_cfg = config.tokenizer;
    text_cfg.emission = Emission::Text;
    text_cfg.grid_size = config.preprocess.grid_size;

    std::vector<std::string> names(corpus.size());
    std::set<std::string> taken;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        std::string id = corpus[i].ink.id();
        if (id.empty()) id = corpus[i].source + "_" + std::to_string(i);
        names[i] = image_file_name(id, i, taken);
    }

    std::vector<std::optional<TrainingRecord>> slots(corpus.size());
    std::vector<std::string> errors(corpus.size());
    parallel_for(
        corpus.size(),
        [&](std::size_t i) {
            const SourcedInk& item = corpus[i];
            TrainingRecord rec;
            rec.id = item.ink.id().empty() ? item.source + "_" + std::to_string(i) : item.ink.id();
            try {
                if (!item.ink.label || item.ink.label->empty()) throw SchemaError("missing label");
                if (auto problems = validate(item.ink); !problems.empty()) throw SchemaError(problems.front());
                rec.source = item.source;
                const RawInk resampled = resample_time(item.ink, config.preprocess.time_delta_ms);
                if (histogram) {
                    rec.input_text = tokenize_histogram(resampled, *config.codebook, text_cfg).text;
                } else {
                    const ProcessedInk grid =
                        quantize(normalize_scale(resampled, config.preprocess.grid_size), config.preprocess);
                    rec.input_text = tokenize(grid, text_cfg).text;
                }
                rec.target = encode_target(*item.ink.label, config.target);
                rec.token_count = counter(rec.input_text);
                rec.over_budget = rec.token_count > config.max_tokens;
                rec.image_path = "images/" + names[i];
                write_png(render(resampled, config.render).image, image_dir / names[i]);
                slots[i] = std::move(rec);
            } catch (const std::exception& e) {
                errors[i] = rec.id + ": " + e.what();
            }
        },
        config.threads);

    ExportResult result;
    std::ofstream manifest(out_dir / "manifest.jsonl", std::ios::binary | std::ios::trunc);
    if (!manifest) throw IoError("cannot write " + (out_dir / "manifest.jsonl").string());
    std::vector<double> lengths;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!slots[i]) {
            ++result.stats.failures;
            result.stats.errors.push_back(errors[i]);
            continue;
        }
        const TrainingRecord& r = *slots[i];
        manifest << record_to_json_line(r) << '\n';
        ++result.stats.records;
        ++result.stats.images;
        ++result.stats.per_source[r.source];
        if (r.over_budget) ++result.stats.over_budget;
        lengths.push_back(static_cast<double>(r.token_count));
        result.records.push_back(r);
    }
    if (!manifest) throw IoError("write failure on manifest");
    result.stats.median_token_length = median(std::move(lengths));

    std::ofstream stats(out_dir / "stats.json", std::ios::binary | std::ios::trunc);
    stats << result.stats.to_json() << '\n';
    if (!stats) throw IoError("cannot write " + (out_dir / "stats.json").string());
    return result;
}

}  // namespace inkrep
