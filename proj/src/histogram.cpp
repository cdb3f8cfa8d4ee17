#include "inkrep/histogram.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "inkrep/error.hpp"

namespace inkrep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr const char* kCodebookFormat = "inkrep-histogram-codebook";

std::uint64_t zigzag(long long v) {
    return v >= 0 ? static_cast<std::uint64_t>(v) * 2 : static_cast<std::uint64_t>(-(v + 1)) * 2 + 1;
}

long long unzigzag(std::uint64_t z) {
    return (z & 1) ? -static_cast<long long>(z >> 1) - 1 : static_cast<long long>(z >> 1);
}

}  // namespace

HistogramCodebook::HistogramCodebook(int angle_bucket_count, std::vector<double> distance_edges)
    : angle_buckets_(angle_bucket_count), edges_(std::move(distance_edges)) {
    if (angle_buckets_ < 1) throw SchemaError("codebook needs at least one angle bucket");
    if (edges_.size() < 2) throw SchemaError("codebook needs at least two distance edges");
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (!(edges_[i] > edges_[i - 1])) throw SchemaError("codebook distance edges must be strictly increasing");
}

double HistogramCodebook::angle_bucket_width() const { return kTwoPi / angle_buckets_; }

int HistogramCodebook::angle_bucket(double dx, double dy) const {
    double turns = std::atan2(dy, dx) / kTwoPi;
    if (turns < 0.0) turns += 1.0;
    if (turns >= 1.0) turns = 0.0;
    int a = static_cast<int>(std::floor(turns * angle_buckets_));
    return std::clamp(a, 0, angle_buckets_ - 1);
}

std::size_t HistogramCodebook::distance_bucket(double log_distance) const {
    auto it = std::upper_bound(edges_.begin(), edges_.end(), log_distance);
    std::ptrdiff_t j = (it - edges_.begin()) - 1;
    const auto last = static_cast<std::ptrdiff_t>(distance_bucket_count()) - 1;
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(j, 0, last));
}

std::uint32_t HistogramCodebook::encode(const Offset& offset) const {
    if (offset.dx == 0.0 && offset.dy == 0.0) return kZeroToken;
    const double d = std::hypot(offset.dx, offset.dy);
    const std::size_t a = static_cast<std::size_t>(angle_bucket(offset.dx, offset.dy));
    return static_cast<std::uint32_t>(1 + a * distance_bucket_count() + distance_bucket(std::log(d)));
}

Offset HistogramCodebook::centroid(std::uint32_t token) const {
    if (token == kZeroToken) return {};
    if (token >= separator_token()) throw RangeError("token " + std::to_string(token) + " is not an offset cell");
    const std::size_t cell = token - 1;
    const std::size_t a = cell / distance_bucket_count();
    const std::size_t j = cell % distance_bucket_count();
    const double theta = (static_cast<double>(a) + 0.5) * angle_bucket_width();
    const double r = std::exp(0.5 * (edges_[j] + edges_[j + 1]));
    return {r * std::cos(theta), r * std::sin(theta)};
}

std::string HistogramCodebook::to_json() const {
    nlohmann::json j;
    j["format"] = kCodebookFormat;
    j["version"] = kFormatVersion;
    j["angle_bucket_count"] = angle_buckets_;
    j["distance_edges"] = edges_;
    j["reserved_tokens"] = {{"<zero>", kZeroToken}, {"<stroke>", separator_token()}};
    j["vocab_size"] = vocab_size();
    return j.dump(2);
}

HistogramCodebook HistogramCodebook::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("codebook: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || j.value("format", "") != kCodebookFormat)
        throw SchemaError("codebook: not a histogram codebook document");
    if (!j.contains("version") || !j["version"].is_number_integer())
        throw SchemaError("codebook: missing version");
    const int version = j["version"].get<int>();
    if (version != kFormatVersion)
        throw SchemaError("codebook: unsupported version " + std::to_string(version) + " (expected " +
                          std::to_string(kFormatVersion) + ")");
    try {
        HistogramCodebook cb(j.at("angle_bucket_count").get<int>(), j.at("distance_edges").get<std::vector<double>>());
        const auto& reserved = j.at("reserved_tokens");
        if (reserved.at("<zero>").get<std::uint32_t>() != kZeroToken ||
            reserved.at("<stroke>").get<std::uint32_t>() != cb.separator_token())
            throw SchemaError("codebook: reserved token table does not match the layout");
        return cb;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("codebook: ") + e.what());
    }
}

void HistogramCodebook::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << to_json() << '\n';
    if (!out) throw IoError("write failure on " + path.string());
}

HistogramCodebook HistogramCodebook::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

// Training ---------------------------------------------------------------

namespace {

struct PolarSample {
    double log_distance;
    int angle;
};

struct Interval {
    double lo;
    double hi;
    std::size_t begin;  // range in the sorted sample array
    std::size_t end;
    std::size_t max_cell;
};

std::size_t max_cell(std::span<const PolarSample> samples, std::size_t begin, std::size_t end, int angle_buckets) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(angle_buckets), 0);
    std::size_t best = 0;
    for (std::size_t i = begin; i < end; ++i) best = std::max(best, ++counts[static_cast<std::size_t>(samples[i].angle)]);
    return best;
}

}  // namespace

HistogramTrainingResult train_histogram_codebook(std::span<const Offset> offsets,
                                                 const HistogramTrainingOptions& options) {
    if (offsets.empty()) throw SchemaError("histogram training: empty offset stream");
    if (options.angle_buckets < 1) throw SchemaError("histogram training: angle_buckets must be positive");
    if (!(options.cell_fraction > 0.0)) throw SchemaError("histogram training: cell_fraction must be positive");

    // A provisional codebook supplies the angle bucketing.
    const HistogramCodebook angles(options.angle_buckets, {0.0, 1.0});

    HistogramTrainingResult result;
    result.offset_count = offsets.size();
    std::vector<PolarSample> samples;
    samples.reserve(offsets.size());
    for (const auto& o : offsets) {
        if (!std::isfinite(o.dx) || !std::isfinite(o.dy)) throw SchemaError("histogram training: non-finite offset");
        if (o.dx == 0.0 && o.dy == 0.0) {
            ++result.zero_count;
            continue;
        }
        samples.push_back({std::log(std::hypot(o.dx, o.dy)), angles.angle_bucket(o.dx, o.dy)});
    }
    if (samples.empty()) throw SchemaError("histogram training: degenerate offset distribution (all offsets are zero)");
    std::sort(samples.begin(), samples.end(),
              [](const PolarSample& a, const PolarSample& b) { return a.log_distance < b.log_distance; });

    const double lo = samples.front().log_distance;
    const double hi = samples.back().log_distance;
    const double threshold = options.cell_fraction * static_cast<double>(result.offset_count);
    const auto violates = [&](std::size_t count) { return static_cast<double>(count) >= threshold; };

    if (!(hi > lo)) {
        result.codebook = HistogramCodebook(options.angle_buckets, {lo - 0.5, lo + 0.5});
        result.max_cell_count = max_cell(samples, 0, samples.size(), options.angle_buckets);
        result.stop = violates(result.max_cell_count) ? HistogramStop::Unsplittable : HistogramStop::Converged;
        return result;
    }

    std::vector<Interval> intervals;
    intervals.push_back({lo, hi, 0, samples.size(), max_cell(samples, 0, samples.size(), options.angle_buckets)});

    // Fullest interval first; ties broken by position for determinism.
    auto worse = [&](std::size_t a, std::size_t b) {
        if (intervals[a].max_cell != intervals[b].max_cell) return intervals[a].max_cell < intervals[b].max_cell;
        return intervals[a].lo > intervals[b].lo;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> queue(worse);
    queue.push(0);

    const auto vocab_with = [&](std::size_t distance_buckets) {
        return static_cast<std::size_t>(options.angle_buckets) * distance_buckets + 2;
    };

    bool blocked = false;  // some violating interval could not be split
    result.stop = HistogramStop::Converged;
    while (!queue.empty()) {
        const std::size_t id = queue.top();
        if (!violates(intervals[id].max_cell)) break;
        if (vocab_with(intervals.size() + 1) > options.max_vocab) {
            result.stop = HistogramStop::VocabCap;
            break;
        }
        queue.pop();
        Interval cur = intervals[id];
        if (cur.hi - cur.lo < options.min_interval_width) {
            blocked = true;
            continue;
        }
        const double mid = 0.5 * (cur.lo + cur.hi);
        auto split_it = std::lower_bound(samples.begin() + static_cast<std::ptrdiff_t>(cur.begin),
                                         samples.begin() + static_cast<std::ptrdiff_t>(cur.end), mid,
                                         [](const PolarSample& s, double v) { return s.log_distance < v; });
        const auto split = static_cast<std::size_t>(split_it - samples.begin());
        intervals[id] = {cur.lo, mid, cur.begin, split, max_cell(samples, cur.begin, split, options.angle_buckets)};
        intervals.push_back({mid, cur.hi, split, cur.end, max_cell(samples, split, cur.end, options.angle_buckets)});
        queue.push(id);
        queue.push(intervals.size() - 1);
        ++result.splits;
    }
    if (result.stop == HistogramStop::Converged && blocked) result.stop = HistogramStop::Unsplittable;

    std::vector<double> edges;
    edges.reserve(intervals.size() + 1);
    for (const auto& iv : intervals) {
        edges.push_back(iv.lo);
        result.max_cell_count = std::max(result.max_cell_count, iv.max_cell);
    }
    std::sort(edges.begin(), edges.end());
    edges.push_back(hi);
    result.codebook = HistogramCodebook(options.angle_buckets, std::move(edges));
    return result;
}

std::vector<Offset> ink_offsets(const RawInk& ink) {
    std::vector<Offset> out;
    const Point* prev = nullptr;
    for (const auto& stroke : ink.strokes) {
        for (const auto& p : stroke) {
            if (prev != nullptr) out.push_back({p.x - prev->x, p.y - prev->y});
            prev = &p;
        }
    }
    return out;
}

TokenSequence tokenize_histogram(const RawInk& ink, const HistogramCodebook& codebook, const TokenizerConfig& config) {
    TokenSequence seq;
    seq.emission = config.emission;
    const std::uint32_t sep = codebook.separator_token();
    const bool text = config.emission == Emission::Text;

    auto put = [&](std::uint32_t token) {
        seq.text += ' ';
        seq.text += std::to_string(token);
    };
    auto put_sep = [&] {
        if (text) {
            if (!seq.text.empty()) seq.text += ' ';
            seq.text += config.stroke_separator;
        } else {
            seq.indices.push_back(sep);
        }
    };

    const Point* prev = nullptr;
    for (const auto& stroke : ink.strokes) {
        put_sep();
        for (const auto& p : stroke) {
            if (prev == nullptr) {
                const long long sx = std::llround(p.x);
                const long long sy = std::llround(p.y);
                if (text) {
                    seq.text += ' ' + std::to_string(sx) + ' ' + std::to_string(sy);
                } else {
                    seq.indices.push_back(static_cast<std::uint32_t>(sep + 1 + zigzag(sx)));
                    seq.indices.push_back(static_cast<std::uint32_t>(sep + 1 + zigzag(sy)));
                }
            } else {
                const std::uint32_t token = codebook.encode({p.x - prev->x, p.y - prev->y});
                if (text)
                    put(token);
                else
                    seq.indices.push_back(token);
            }
            prev = &p;
        }
    }
    return seq;
}

std::vector<Polyline> detokenize_histogram(const TokenSequence& sequence, const HistogramCodebook& codebook,
                                           const TokenizerConfig& config) {
    const std::uint32_t sep = codebook.separator_token();

    // Normalise both emission forms to (separator | value) with the start
    // pair decoded to plain coordinates.
    std::vector<RawToken> tokens;
    if (sequence.emission == Emission::Text) {
        tokens = lex_tokens(sequence.text, config.stroke_separator);
    } else {
        tokens.reserve(sequence.indices.size());
        for (std::size_t i = 0; i < sequence.indices.size(); ++i) {
            const auto idx = sequence.indices[i];
            if (idx == sep)
                tokens.push_back({true, 0});
            else if (i == 1 || i == 2) {
                if (idx < sep) throw ParseError(ParseError::Unit::Token, i, "expected start-position token");
                tokens.push_back({false, unzigzag(idx - sep - 1)});
            } else {
                tokens.push_back({false, static_cast<long long>(idx)});
            }
        }
    }

    if (tokens.empty()) throw ParseError(ParseError::Unit::Token, 0, "empty sequence");
    if (!tokens.front().separator) throw ParseError(ParseError::Unit::Token, 0, "expected stroke separator");

    std::vector<Polyline> out;
    Vec2 pos;
    for (std::size_t i = 0; i < tokens.size();) {
        const std::size_t stroke_start = i++;
        Polyline line;
        if (out.empty()) {
            if (i + 1 >= tokens.size() || tokens[i].separator || tokens[i + 1].separator)
                throw ParseError(ParseError::Unit::Token, i, "missing start position");
            pos = {static_cast<double>(tokens[i].value), static_cast<double>(tokens[i + 1].value)};
            line.push_back(pos);
            i += 2;
        }
        for (; i < tokens.size() && !tokens[i].separator; ++i) {
            const long long v = tokens[i].value;
            if (v < 0 || v >= static_cast<long long>(sep))
                throw ParseError(ParseError::Unit::Token, i, "token " + std::to_string(v) + " is not an offset cell");
            const Offset o = codebook.centroid(static_cast<std::uint32_t>(v));
            pos = {pos.x + o.dx, pos.y + o.dy};
            line.push_back(pos);
        }
        if (line.empty()) throw ParseError(ParseError::Unit::Token, stroke_start, "empty stroke");
        out.push_back(std::move(line));
    }
    return out;
}

}  // namespace inkrep
