#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "inkrep/dataset.hpp"
#include "inkrep/preprocess.hpp"
#include "inkrep/render.hpp"
#include "inkrep/target.hpp"
#include "inkrep/tokenizer.hpp"

namespace inkrep {

struct DatasetConfig {
    std::vector<MixSource> sources;
    std::uint64_t seed = 0;
    /// Records drawn by the mixer; 0 means one pass over each source.
    std::size_t count = 0;
    std::size_t max_tokens = 1024;
};

/// The declarative pipeline config document: one JSON object with optional
/// sections "preprocess", "tokenizer", "render", "target", "dataset".
/// Unknown keys anywhere are rejected.
struct PipelineConfig {
    PreprocessConfig preprocess;
    TokenizerConfig tokenizer;
    std::optional<std::filesystem::path> codebook_path;
    RenderConfig render;
    TargetConfig target;
    DatasetConfig dataset;

    void check() const;
    std::string to_json() const;
};

/// Relative source and codebook paths resolve against `base_dir`.
PipelineConfig parse_pipeline_config(std::string_view text, const std::filesystem::path& base_dir = {});
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

}  // namespace inkrep
