#include <gtest/gtest.h>

#include "inkrep/config.hpp"
#include "inkrep/error.hpp"

using namespace inkrep;

TEST(PipelineConfig, EmptyDocumentGivesDefaults) {
    const auto cfg = parse_pipeline_config("{}");
    EXPECT_EQ(cfg.preprocess.time_delta_ms, 20.0);
    EXPECT_EQ(cfg.preprocess.grid_size, 224);
    EXPECT_EQ(cfg.tokenizer.mode, CoordinateMode::Relative);
    EXPECT_EQ(cfg.render.line_count, 2);
    EXPECT_EQ(cfg.render.color_mode, ColorMode::TimeDistance);
    EXPECT_EQ(cfg.target.vocabulary, TargetVocabulary::Character);
    EXPECT_FALSE(cfg.codebook_path.has_value());
}

TEST(PipelineConfig, ReadsSectionsAndResolvesPaths) {
    const auto cfg = parse_pipeline_config(R"({
        "preprocess": {"time_delta_ms": 10, "grid_size": 100},
        "tokenizer": {"mode": "absolute", "emission": "extended_index", "codebook": "cb.json"},
        "render": {"color_mode": "time", "line_count": 4, "image_size": 256},
        "target": {"vocabulary": "latex", "space_separated": false},
        "dataset": {"seed": 9, "count": 50, "sources": [
            {"name": "a", "path": "data/a.jsonl", "weight": 0.8},
            {"name": "b", "path": "/abs/b.jsonl", "weight": 0.2}]}
    })",
                                           "/base");
    EXPECT_EQ(cfg.preprocess.grid_size, 100);
    EXPECT_EQ(cfg.tokenizer.emission, Emission::ExtendedIndex);
    EXPECT_EQ(*cfg.codebook_path, std::filesystem::path("/base/cb.json"));
    EXPECT_EQ(cfg.render.image_size, 256);
    EXPECT_FALSE(cfg.target.space_separated);
    ASSERT_EQ(cfg.dataset.sources.size(), 2u);
    EXPECT_EQ(cfg.dataset.sources[0].path, std::filesystem::path("/base/data/a.jsonl"));
    EXPECT_EQ(cfg.dataset.sources[1].path, std::filesystem::path("/abs/b.jsonl"));
    EXPECT_EQ(cfg.dataset.seed, 9u);
}

TEST(PipelineConfig, RoundTripsThroughJson) {
    const auto cfg = parse_pipeline_config(R"({"render": {"line_count": 1}, "target": {"vocabulary": "latex"}})");
    EXPECT_EQ(parse_pipeline_config(cfg.to_json()).to_json(), cfg.to_json());
}

TEST(PipelineConfig, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse_pipeline_config(R"({"preproces": {}})"), SchemaError);
    EXPECT_THROW(parse_pipeline_config(R"({"render": {"lines": 2}})"), SchemaError);
    EXPECT_THROW(parse_pipeline_config(R"({"render": {"line_count": "two"}})"), SchemaError);
    EXPECT_THROW(parse_pipeline_config(R"({"render": {"line_count": 3}})"), SchemaError);
    EXPECT_THROW(parse_pipeline_config(R"({"tokenizer": {"mode": "polar"}})"), SchemaError);
    EXPECT_THROW(parse_pipeline_config("[1, 2"), Error);
    EXPECT_THROW(parse_pipeline_config(R"({"dataset": {"sources": [{"name": "a", "path": "a", "weight": 0.5}]}})"),
                 SchemaError);
}

TEST(PipelineConfig, ShippedConfigsLoad) {
    for (const char* name : {"default.json", "math_mixture.json"}) {
        const auto cfg = load_pipeline_config(std::filesystem::path(INKREP_SOURCE_DIR) / "configs" / name);
        EXPECT_NO_THROW(cfg.check()) << name;
    }
    const auto defaults = load_pipeline_config(std::filesystem::path(INKREP_SOURCE_DIR) / "configs" / "default.json");
    EXPECT_EQ(defaults.to_json(), PipelineConfig{}.to_json());
}
