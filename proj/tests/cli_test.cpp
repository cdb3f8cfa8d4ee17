#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <sys/wait.h>

#include <json.hpp>

#include "inkrep/ingest.hpp"
#include "test_support.hpp"

using namespace inkrep;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status;
    std::string output;
};

Run run(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "cli.log";
    const std::string cmd = std::string(INKREP_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fixtures::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::mt19937_64 rng(81);
        std::vector<RawInk> inks;
        for (int i = 0; i < 12; ++i) {
            inks.push_back(fixtures::synthetic_ink(rng));
            inks.back().label = "w" + std::to_string(i);
            inks.back().metadata["id"] = "s" + std::to_string(i);
        }
        write_jsonl(inks, dir_ / "corpus.jsonl");
    }
    std::string p(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

}  // namespace

TEST_F(Cli, IngestInkml) {
    fs::create_directories(dir_ / "inkml");
    std::ofstream(dir_ / "inkml" / "a.inkml") << "<ink><annotation type=\"label\">x+y</annotation>"
                                                 "<trace>0 0 0, 5 5 8</trace><trace>6 6 20</trace></ink>";
    std::ofstream(dir_ / "inkml" / "b.inkml") << "<ink><trace>1 1 0</trace></ink>";
    const auto r = run("ingest " + p("inkml") + " --out " + p("out.jsonl"), dir_);
    ASSERT_EQ(r.status, 0) << r.output;
    const auto inks = read_jsonl(dir_ / "out.jsonl");
    ASSERT_EQ(inks.size(), 2u);
    EXPECT_EQ(inks[0].label, "x+y");
    EXPECT_EQ(inks[0].id(), "a");
}

TEST_F(Cli, IngestFailureExitsNonZeroUnlessPartial) {
    fs::create_directories(dir_ / "inkml");
    std::ofstream(dir_ / "inkml" / "a.inkml") << "<ink><trace>0 0 0</trace></ink>";
    std::ofstream(dir_ / "inkml" / "b.inkml") << "<ink><trace>0 0 abc</trace></ink>";
    auto r = run("ingest " + p("inkml") + " --out " + p("out.jsonl"), dir_);
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.output.find("trace 0"), std::string::npos) << r.output;
    r = run("ingest " + p("inkml") + " --out " + p("out.jsonl") + " --allow-partial", dir_);
    EXPECT_EQ(r.status, 0) << r.output;
}

TEST_F(Cli, StatsPrintsTableAndWritesJson) {
    const auto r = run("stats " + p("corpus.jsonl") + " --out " + p("stats.json"), dir_);
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("+Time sampling"), std::string::npos);
    const auto j = nlohmann::json::parse(slurp(dir_ / "stats.json"));
    EXPECT_EQ(j["rows"].size(), 4u);
    EXPECT_EQ(j["ink_count"], 12);
}

TEST_F(Cli, IngestEmptyDirectory) {
    fs::create_directories(dir_ / "none");
    const auto r = run("ingest " + p("none") + " --format inkml --out " + p("out.jsonl"), dir_);
    EXPECT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("ingested 0 inks"), std::string::npos);
}

TEST_F(Cli, IngestMalformedXmlNamesFileAndOffset) {
    fs::create_directories(dir_ / "bad");
    std::ofstream(dir_ / "bad" / "broken.inkml") << "<ink><trace>0 0 0</trace></inx>";
    const auto r = run("ingest " + p("bad") + " --out " + p("out.jsonl"), dir_);
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.output.find("broken.inkml"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("byte offset 25"), std::string::npos) << r.output;
}

TEST_F(Cli, StatsJsonMatchesTable) {
    const auto r = run("stats " + p("corpus.jsonl"), dir_);
    ASSERT_EQ(r.status, 0) << r.output;
    const auto j = nlohmann::json::parse(r.output.substr(r.output.find('{')));
    for (const auto& row : j["rows"]) {
        char line[128];
        std::snprintf(line, sizeof line, "%-28s %10.1f %10.1f", row["stage"].get<std::string>().c_str(),
                      row["median_points"].get<double>(), row["median_tokens"].get<double>());
        EXPECT_NE(r.output.find(line), std::string::npos) << line;
    }
}

TEST_F(Cli, StatsOnEmptyCorpusFails) {
    std::ofstream(dir_ / "empty.jsonl");
    EXPECT_NE(run("stats " + p("empty.jsonl"), dir_).status, 0);
}

TEST_F(Cli, TokenizeModes) {
    auto r = run("tokenize " + p("corpus.jsonl") + " --mode absolute --out " + p("abs.jsonl"), dir_);
    ASSERT_EQ(r.status, 0) << r.output;
    std::ifstream in(dir_ / "abs.jsonl");
    std::string line;
    std::getline(in, line);
    const auto row = nlohmann::json::parse(line);
    EXPECT_EQ(row["id"], "s0");
    EXPECT_EQ(row["tokens"].get<std::string>().rfind("<stroke> ", 0), 0u);
    r = run("tokenize " + p("corpus.jsonl") + " --emission extended_index --out " + p("idx.jsonl"), dir_);
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(slurp(dir_ / "idx.jsonl").find("\"indices\""), std::string::npos);
    EXPECT_NE(run("tokenize " + p("corpus.jsonl") + " --mode polar --out " + p("x.jsonl"), dir_).status, 0);
}

TEST_F(Cli, TrainCodebookThenHistogramTokenize) {
    auto r = run("train-codebook " + p("corpus.jsonl") + " --cell-fraction 0.01 --out " + p("cb.json"), dir_);
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("vocab size"), std::string::npos);
    r = run("tokenize " + p("corpus.jsonl") + " --mode histogram --codebook " + p("cb.json") + " --out " +
                p("h.jsonl"),
            dir_);
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(run("tokenize " + p("corpus.jsonl") + " --mode histogram --out " + p("h2.jsonl"), dir_).status, 0);
}

TEST_F(Cli, RenderIsDeterministic) {
    ASSERT_EQ(run("render " + p("corpus.jsonl") + " --out " + p("img1"), dir_).status, 0);
    ASSERT_EQ(run("render " + p("corpus.jsonl") + " --out " + p("img2") + " --lines 2", dir_).status, 0);
    EXPECT_EQ(slurp(dir_ / "img1" / "s3.png"), slurp(dir_ / "img2" / "s3.png"));
    EXPECT_FALSE(slurp(dir_ / "img1" / "s3.png").empty());
    EXPECT_NE(run("render " + p("corpus.jsonl") + " --out " + p("img3") + " --lines 3", dir_).status, 0);
}

TEST_F(Cli, ColorModesGiveDistinctImages) {
    std::set<std::string> images;
    for (const char* mode : {"bw", "time", "time_distance"}) {
        const std::string out = p(std::string("modes_") + mode);
        ASSERT_EQ(run("render " + p("corpus.jsonl") + " --color-mode " + mode + " --out " + out, dir_).status, 0);
        images.insert(slurp(fs::path(out) / "s5.png"));
    }
    EXPECT_EQ(images.size(), 3u);
}

TEST_F(Cli, ExportFromConfigMixture) {
    std::ofstream(dir_ / "cfg.json") << R"({"dataset": {"seed": 5, "count": 20, "max_tokens": 4096,
        "sources": [{"name": "main", "path": "corpus.jsonl", "weight": 1.0}]}})";
    const auto r = run("export --config " + p("cfg.json") + " --out " + p("export"), dir_);
    ASSERT_EQ(r.status, 0) << r.output;
    const auto stats = nlohmann::json::parse(slurp(dir_ / "export" / "stats.json"));
    EXPECT_EQ(stats["records"], 20);
    const auto again = run("export --config " + p("cfg.json") + " --out " + p("export2"), dir_);
    ASSERT_EQ(again.status, 0);
    EXPECT_EQ(slurp(dir_ / "export" / "manifest.jsonl"), slurp(dir_ / "export2" / "manifest.jsonl"));
}

TEST_F(Cli, EvalReportsCer) {
    std::ofstream(dir_ / "pred.jsonl") << R"({"reference":"hello","hypothesis":"h a l l o"})" << "\n";
    auto r = run("eval " + p("pred.jsonl"), dir_);
    ASSERT_EQ(r.status, 0) << r.output;
    EXPECT_NE(r.output.find("CER: 0.2000"), std::string::npos) << r.output;
    std::ofstream(dir_ / "none.jsonl");
    EXPECT_NE(run("eval " + p("none.jsonl"), dir_).status, 0);
}

TEST_F(Cli, UnknownConfigKeyFails) {
    std::ofstream(dir_ / "bad.json") << R"({"render": {"colour": "bw"}})";
    const auto r = run("stats " + p("corpus.jsonl") + " --config " + p("bad.json"), dir_);
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.output.find("colour"), std::string::npos);
}
