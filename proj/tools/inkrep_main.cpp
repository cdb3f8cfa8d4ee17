// inkrep: command-line front end for the digital-ink representation toolkit.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "inkrep/cer.hpp"
#include "inkrep/config.hpp"
#include "inkrep/dataset.hpp"
#include "inkrep/error.hpp"
#include "inkrep/histogram.hpp"
#include "inkrep/ingest.hpp"
#include "inkrep/preprocess.hpp"
#include "inkrep/render.hpp"
#include "inkrep/sequence_stats.hpp"
#include "inkrep/tokenizer.hpp"

namespace fs = std::filesystem;
using namespace inkrep;

namespace {

struct Common {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    bool allow_partial = false;
};

// True if the subcommand has the option and it was given.
bool given(const CLI::App& cmd, const char* name) {
    const CLI::Option* opt = cmd.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
}

int finish(std::size_t failures, const Common& common) {
    return failures == 0 || common.allow_partial ? 0 : 1;
}

std::vector<fs::path> list_inputs(const fs::path& input, const std::string& extension) {
    if (!fs::is_directory(input)) return {input};
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(input))
        if (entry.is_regular_file() && entry.path().extension() == extension) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--config", common.config, "Pipeline config document (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--out", common.out, "Output path");
    cmd->add_option("--seed", common.seed, "Seed for all randomness");
    cmd->add_flag("--allow-partial", common.allow_partial, "Exit 0 even if some records failed");
}

// ingest -------------------------------------------------------------------

int cmd_ingest(const std::string& input, std::string format, const std::vector<std::string>& label_types,
               const Common& common) {
    if (common.out.empty()) throw Error("ingest: --out is required");
    if (format.empty()) {
        const fs::path p(input);
        format = fs::is_directory(p) ? "inkml" : (p.extension() == ".jsonl" ? "jsonl" : "inkml");
    }
    if (format != "inkml" && format != "jsonl") throw Error("ingest: unknown format '" + format + "'");

    InkmlOptions options;
    if (!label_types.empty()) options.label_annotation_types = label_types;

    const auto files = list_inputs(input, format == "inkml" ? ".inkml" : ".jsonl");
    JsonlWriter writer(common.out);
    std::size_t failures = 0;
    for (const auto& file : files) {
        try {
            if (format == "inkml") {
                for (const auto& ink : read_inkml(file, options)) writer.write(ink);
            } else {
                JsonlReader reader(file);
                while (auto ink = reader.next()) writer.write(*ink);
            }
        } catch (const Error& e) {
            ++failures;
            std::cerr << "error: " << (format == "jsonl" ? file.string() + ": " : "") << e.what() << '\n';
            if (!common.allow_partial) return 1;
        }
    }
    std::cout << "ingested " << writer.count() << " inks from " << files.size() << " files -> " << common.out
              << '\n';
    return finish(failures, common);
}

// stats --------------------------------------------------------------------

int cmd_stats(const std::string& corpus_path, const PipelineConfig& cfg, const Common& common) {
    const auto corpus = read_jsonl(corpus_path);
    if (corpus.empty()) {
        std::cerr << "error: empty corpus\n";
        return 1;
    }
    TokenizerConfig tok = cfg.tokenizer;
    if (tok.mode == CoordinateMode::Histogram) tok.mode = CoordinateMode::Relative;
    const SequenceStats stats = sequence_stats(corpus, cfg.preprocess, tok);
    std::cout << stats.to_table();
    if (common.out.empty()) {
        std::cout << '\n' << stats.to_json() << '\n';
    } else {
        std::ofstream out(common.out);
        out << stats.to_json() << '\n';
        if (!out) throw IoError("cannot write " + common.out);
    }
    return 0;
}

// tokenize -----------------------------------------------------------------

int cmd_tokenize(const std::string& corpus_path, const PipelineConfig& cfg, const Common& common) {
    if (common.out.empty()) throw Error("tokenize: --out is required");
    std::optional<HistogramCodebook> codebook;
    if (cfg.tokenizer.mode == CoordinateMode::Histogram) {
        if (!cfg.codebook_path) throw Error("tokenize: histogram mode needs --codebook");
        codebook = HistogramCodebook::load(*cfg.codebook_path);
    }
    JsonlReader reader(corpus_path);
    std::ofstream out(common.out, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + common.out);
    std::size_t n = 0;
    std::size_t failures = 0;
    for (;;) {
        std::optional<RawInk> ink;
        try {
            ink = reader.next();
        } catch (const Error& e) {
            ++failures;
            std::cerr << "error: " << e.what() << '\n';
            if (!common.allow_partial) return 1;
            continue;
        }
        if (!ink) break;
        const RawInk resampled = resample_time(*ink, cfg.preprocess.time_delta_ms);
        const TokenSequence seq =
            codebook ? tokenize_histogram(resampled, *codebook, cfg.tokenizer)
                     : tokenize(quantize(normalize_scale(resampled, cfg.preprocess.grid_size), cfg.preprocess),
                                cfg.tokenizer);
        nlohmann::ordered_json row;
        row["id"] = ink->id().empty() ? "ink_" + std::to_string(n) : ink->id();
        if (seq.emission == Emission::Text)
            row["tokens"] = seq.text;
        else
            row["indices"] = seq.indices;
        out << row.dump() << '\n';
        ++n;
    }
    std::cout << "tokenized " << n << " inks (" << to_string(cfg.tokenizer.mode) << ", "
              << to_string(cfg.tokenizer.emission) << ") -> " << common.out << '\n';
    return finish(failures, common);
}

// render -------------------------------------------------------------------

int cmd_render(const std::string& corpus_path, const PipelineConfig& cfg, const Common& common) {
    if (common.out.empty()) throw Error("render: --out is required");
    auto corpus = read_jsonl(corpus_path);
    for (auto& ink : corpus) ink = resample_time(ink, cfg.preprocess.time_delta_ms);
    const auto result = render_batch(corpus, cfg.render, common.out);
    for (const auto& e : result.errors) std::cerr << "error: " << e << '\n';
    std::cout << "rendered " << result.manifest.size() << " images (" << to_string(cfg.render.color_mode) << ", "
              << cfg.render.line_count << " lines) -> " << common.out << '\n';
    return finish(result.errors.size(), common);
}

// export -------------------------------------------------------------------

int cmd_export(const std::vector<std::string>& corpora, const PipelineConfig& cfg, const Common& common) {
    if (common.out.empty()) throw Error("export: --out is required");
    std::vector<SourcedInk> items;
    if (!corpora.empty()) {
        for (const auto& path : corpora) {
            const std::string source = fs::path(path).stem().string();
            for (auto& ink : read_jsonl(path)) items.push_back({source, std::move(ink)});
        }
    } else if (!cfg.dataset.sources.empty()) {
        MixSpec spec{cfg.dataset.sources, cfg.dataset.seed};
        std::size_t n = cfg.dataset.count;
        if (n == 0) {
            for (const auto& s : spec.sources)
                if (s.weight > 0.0) n += read_jsonl(s.path).size();
        }
        items = mix(spec, n);
    } else {
        throw Error("export: give corpus files or dataset.sources in --config");
    }

    ExportConfig ec;
    ec.preprocess = cfg.preprocess;
    ec.tokenizer = cfg.tokenizer;
    ec.render = cfg.render;
    ec.target = cfg.target;
    ec.max_tokens = cfg.dataset.max_tokens;
    if (cfg.tokenizer.mode == CoordinateMode::Histogram) {
        if (!cfg.codebook_path) throw Error("export: histogram mode needs --codebook");
        ec.codebook = HistogramCodebook::load(*cfg.codebook_path);
    }
    const auto result = export_dataset(items, ec, common.out);
    for (const auto& e : result.stats.errors) std::cerr << "error: " << e << '\n';
    std::printf("exported %zu records (%zu failed, %zu over budget), median tokens %.1f -> %s\n",
                result.stats.records, result.stats.failures, result.stats.over_budget,
                result.stats.median_token_length, common.out.c_str());
    return finish(result.stats.failures, common);
}

// eval ---------------------------------------------------------------------

int cmd_eval(const std::string& predictions, const PipelineConfig& cfg, const Common& common) {
    const auto pairs = read_cer_pairs(predictions);
    if (pairs.empty()) {
        std::cerr << "error: no predictions\n";
        return 1;
    }
    const CerReport report = corpus_cer(pairs, cfg.target);
    for (const auto& s : report.samples)
        if (!s.error.empty()) std::cerr << "error: sample " << s.index << ": " << s.error << '\n';
    if (report.aggregate)
        std::printf("CER: %.4f (%zu edits / %zu reference tokens, %zu samples)\n", *report.aggregate,
                    report.total_distance, report.total_reference_length, report.samples.size());
    else
        std::printf("CER: n/a (no scorable samples)\n");
    if (!common.out.empty()) {
        std::ofstream out(common.out);
        out << report.to_json() << '\n';
        if (!out) throw IoError("cannot write " + common.out);
    }
    return finish(report.error_count, common);
}

// train-codebook -------------------------------------------------------------

int cmd_train_codebook(const std::string& corpus_path, const PipelineConfig& cfg,
                       const HistogramTrainingOptions& options, const Common& common) {
    if (common.out.empty()) throw Error("train-codebook: --out is required");
    std::vector<Offset> offsets;
    JsonlReader reader(corpus_path);
    while (auto ink = reader.next()) {
        const auto o = ink_offsets(resample_time(*ink, cfg.preprocess.time_delta_ms));
        offsets.insert(offsets.end(), o.begin(), o.end());
    }
    const auto result = train_histogram_codebook(offsets, options);
    result.codebook.save(common.out);
    const char* stop = result.stop == HistogramStop::Converged  ? "converged"
                       : result.stop == HistogramStop::VocabCap ? "vocabulary cap"
                                                                : "unsplittable interval";
    std::printf("vocab size %zu (%d angle x %zu distance buckets), %zu offsets, stop: %s -> %s\n",
                result.codebook.vocab_size(), result.codebook.angle_bucket_count(),
                result.codebook.distance_bucket_count(), result.offset_count, stop, common.out.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"inkrep - digital ink to token sequences, images and training records"};
    app.require_subcommand(1);

    Common common;
    std::string input;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Convert InkML or JSONL inks to canonical JSONL");
    std::string format;
    std::vector<std::string> label_types;
    ingest->add_option("input", input, "Input file or directory")->required();
    ingest->add_option("--format", format, "inkml or jsonl (default: by extension)");
    ingest->add_option("--label-annotation", label_types, "InkML annotation type(s) holding the label");
    add_common(ingest, common);

    // Flags shared by the pipeline commands; they override the config file.
    double time_delta = 0.0;
    int grid_size = 0;
    std::string mode, emission, codebook, color_mode, vocabulary;
    int lines = 0, image_size = 0, stroke_width = 0, margin = -1;
    std::size_t max_tokens = 0, count = 0;
    bool spaced = false, unspaced = false;
    auto add_pipeline_flags = [&](CLI::App* cmd) {
        cmd->add_option("--time-delta", time_delta, "Resampling interval in ms");
        cmd->add_option("--grid-size", grid_size, "Normalization grid size N");
        cmd->add_option("--mode", mode, "absolute, relative or histogram");
        cmd->add_option("--emission", emission, "text or extended_index");
        cmd->add_option("--codebook", codebook, "Histogram codebook JSON");
        cmd->add_option("--color-mode", color_mode, "bw, time or time_distance");
        cmd->add_option("--lines", lines, "Number of stacked lines in the image");
        cmd->add_option("--image-size", image_size, "Square image side in pixels");
        cmd->add_option("--stroke-width", stroke_width, "Brush width in pixels");
        cmd->add_option("--margin", margin, "Margin in pixels");
        cmd->add_option("--vocabulary", vocabulary, "Target vocabulary: character or latex");
        cmd->add_flag("--spaced", spaced, "Space-separated targets");
        cmd->add_flag("--unspaced", unspaced, "Targets without space separation");
        add_common(cmd, common);
    };

    auto* stats = app.add_subcommand("stats", "Median sequence length per pipeline stage");
    stats->add_option("corpus", input, "Canonical JSONL corpus")->required();
    add_pipeline_flags(stats);

    auto* tokenize_cmd = app.add_subcommand("tokenize", "Write token sequences as JSONL");
    tokenize_cmd->add_option("corpus", input, "Canonical JSONL corpus")->required();
    add_pipeline_flags(tokenize_cmd);

    auto* render_cmd = app.add_subcommand("render", "Render inks to PNG images");
    render_cmd->add_option("corpus", input, "Canonical JSONL corpus")->required();
    add_pipeline_flags(render_cmd);

    auto* export_cmd = app.add_subcommand("export", "Export training records (tokens, image, target)");
    std::vector<std::string> corpora;
    export_cmd->add_option("corpus", corpora, "Canonical JSONL corpora (default: dataset.sources)");
    export_cmd->add_option("--max-tokens", max_tokens, "Token budget; longer records are flagged");
    export_cmd->add_option("--count", count, "Records to draw from the mixture");
    add_pipeline_flags(export_cmd);

    auto* eval_cmd = app.add_subcommand("eval", "Character error rate of predictions");
    eval_cmd->add_option("predictions", input, "JSONL of {reference, hypothesis}")->required();
    add_pipeline_flags(eval_cmd);

    auto* train_cmd = app.add_subcommand("train-codebook", "Train the histogram offset codebook");
    HistogramTrainingOptions train_options;
    train_cmd->add_option("corpus", input, "Canonical JSONL corpus")->required();
    train_cmd->add_option("--angle-buckets", train_options.angle_buckets, "Uniform angle buckets");
    train_cmd->add_option("--cell-fraction", train_options.cell_fraction, "Maximum mass per joint cell");
    train_cmd->add_option("--max-vocab", train_options.max_vocab, "Vocabulary cap");
    add_pipeline_flags(train_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* cmd = app.get_subcommands().front();
        if (cmd == ingest) return cmd_ingest(input, format, label_types, common);

        PipelineConfig cfg = common.config.empty() ? PipelineConfig{} : load_pipeline_config(common.config);
        if (given(*cmd, "--time-delta")) cfg.preprocess.time_delta_ms = time_delta;
        if (given(*cmd, "--grid-size")) cfg.preprocess.grid_size = cfg.tokenizer.grid_size = grid_size;
        if (given(*cmd, "--mode")) cfg.tokenizer.mode = parse_coordinate_mode(mode);
        if (given(*cmd, "--emission")) cfg.tokenizer.emission = parse_emission(emission);
        if (given(*cmd, "--codebook")) cfg.codebook_path = codebook;
        if (given(*cmd, "--color-mode")) cfg.render.color_mode = parse_color_mode(color_mode);
        if (given(*cmd, "--lines")) cfg.render.line_count = lines;
        if (given(*cmd, "--image-size")) cfg.render.image_size = image_size;
        if (given(*cmd, "--stroke-width")) cfg.render.stroke_width = stroke_width;
        if (given(*cmd, "--margin")) cfg.render.margin = margin;
        if (given(*cmd, "--vocabulary")) cfg.target = TargetConfig::for_vocabulary(parse_target_vocabulary(vocabulary));
        if (spaced) cfg.target.space_separated = true;
        if (unspaced) cfg.target.space_separated = false;
        if (given(*cmd, "--max-tokens")) cfg.dataset.max_tokens = max_tokens;
        if (given(*cmd, "--count")) cfg.dataset.count = count;
        if (given(*cmd, "--seed")) cfg.dataset.seed = common.seed;
        cfg.check();

        if (cmd == stats) return cmd_stats(input, cfg, common);
        if (cmd == tokenize_cmd) return cmd_tokenize(input, cfg, common);
        if (cmd == render_cmd) return cmd_render(input, cfg, common);
        if (cmd == export_cmd) return cmd_export(corpora, cfg, common);
        if (cmd == eval_cmd) return cmd_eval(input, cfg, common);
        if (cmd == train_cmd) return cmd_train_codebook(input, cfg, train_options, common);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
