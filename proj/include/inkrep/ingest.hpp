#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inkrep/ink.hpp"

namespace inkrep {

/// Shifts all timestamps so the first point of the ink has t = 0.
void rebase_time(RawInk& ink);

/// Canonical JSONL record <-> RawInk. Parsing validates the ink and rebases
/// time; throws SchemaError for invariant violations and ParseError for
/// malformed JSON.
RawInk ink_from_json_line(std::string_view line, std::size_t line_number = 1);
std::string ink_to_json_line(const RawInk& ink);

/// Streams inks from a canonical JSONL file one record at a time.
class JsonlReader {
public:
    explicit JsonlReader(const std::filesystem::path& path);

    /// Next ink in file order, or nullopt at end of file. Blank lines are
    /// skipped. Errors carry the 1-based line number.
    std::optional<RawInk> next();

    std::size_t line_number() const { return line_; }

private:
    std::filesystem::path path_;
    std::ifstream in_;
    std::size_t line_ = 0;
};

class JsonlWriter {
public:
    explicit JsonlWriter(const std::filesystem::path& path);

    void write(const RawInk& ink);
    std::size_t count() const { return count_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t count_ = 0;
};

std::vector<RawInk> read_jsonl(const std::filesystem::path& path);

/// Returns the number of records written.
std::size_t write_jsonl(std::span<const RawInk> inks, const std::filesystem::path& path);

struct InkmlOptions {
    /// Annotation `type` values consulted for the label, in priority order.
    std::vector<std::string> label_annotation_types = {"normalizedLabel", "label"};
};

/// Parses the InkML subset used by public handwriting datasets: `<trace>`
/// elements of comma-separated "x y t" points and `<annotation>` labels.
/// Each `<ink>` element yields one RawInk. Other annotations land in the
/// metadata; metadata["id"] falls back to the file stem.
std::vector<RawInk> parse_inkml(std::string_view document, const InkmlOptions& options = {},
                                const std::string& default_id = {});
std::vector<RawInk> read_inkml(const std::filesystem::path& path, const InkmlOptions& options = {});

}  // namespace inkrep
