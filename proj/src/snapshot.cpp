#include "hottopics/snapshot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <system_error>

#include <fmt/format.h>

#include "hottopics/error.hpp"
#include "text_util.hpp"

namespace hottopics {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kDateHeader = "#date: ";
constexpr std::string_view kSnapshotSuffix = ".tsv";

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

std::optional<Date> try_parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0;
    unsigned m = 0, d = 0;
    auto digits = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits(text.substr(0, 4)) || !digits(text.substr(5, 2)) || !digits(text.substr(8, 2)))
        return std::nullopt;
    parse_int(text.substr(0, 4), y);
    parse_int(text.substr(5, 2), m);
    parse_int(text.substr(8, 2), d);
    Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) return std::nullopt;
    return date;
}

double mean(std::span<const double> v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

Date parse_date(std::string_view text) {
    if (auto d = try_parse_date(text)) return *d;
    throw Error("invalid date '" + std::string(text) + "', expected YYYY-MM-DD");
}

std::string format_date(Date date) {
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(date.year()),
                       static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
}

Snapshot snapshot_from_records(const std::vector<ArticleRecord>& records, Date date) {
    Snapshot s;
    s.date = date;
    for (const auto& r : records) s.usage[r.accession_id] = r.usage_since_2013;
    return s;
}

std::string write_snapshot(const Snapshot& snapshot) {
    std::string out;
    out += kDateHeader;
    out += format_date(snapshot.date);
    out += '\n';
    for (const auto& [id, count] : snapshot.usage) {
        out += id;
        out += '\t';
        out += std::to_string(count);
        out += '\n';
    }
    return out;
}

Snapshot parse_snapshot(std::string_view text, const std::string& source) {
    Snapshot s;
    s.source_file = source;
    bool have_header = false;

    detail::LineReader reader(detail::strip_bom(text));
    std::string_view line;
    while (reader.next(line)) {
        const auto ln = reader.line_no();
        if (detail::trim(line).empty()) continue;
        if (!have_header) {
            if (line.substr(0, kDateHeader.size()) != kDateHeader)
                throw BadSnapshotFile("expected '#date: YYYY-MM-DD' header", ln, source);
            auto date = try_parse_date(detail::trim(line.substr(kDateHeader.size())));
            if (!date) throw BadSnapshotFile("invalid date in header", ln, source);
            s.date = *date;
            have_header = true;
            continue;
        }
        auto tab = line.find('\t');
        if (tab == std::string_view::npos || tab == 0)
            throw BadSnapshotFile("expected 'id<TAB>count'", ln, source);
        std::string id(line.substr(0, tab));
        std::uint64_t count = 0;
        if (!parse_int(line.substr(tab + 1), count))
            throw BadSnapshotFile("usage count is not a non-negative integer", ln, source);
        if (!s.usage.emplace(std::move(id), count).second)
            throw BadSnapshotFile("duplicate id", ln, source);
    }
    if (!have_header) throw BadSnapshotFile("missing '#date:' header", 0, source);
    return s;
}

// ---------------------------------------------------------------------------
// SnapshotStore

std::string SnapshotStore::file_name(Date date) {
    return format_date(date) + std::string(kSnapshotSuffix);
}

SnapshotStore SnapshotStore::open(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw UnwritableStore("cannot create snapshot store at " + dir.string());

    SnapshotStore store(dir);
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (name.size() != 10 + kSnapshotSuffix.size() ||
            std::string_view(name).substr(10) != kSnapshotSuffix)
            continue;
        if (auto date = try_parse_date(std::string_view(name).substr(0, 10)))
            store.index_.emplace(*date, entry.path());
    }
    return store;
}

void SnapshotStore::add(const Snapshot& snapshot) {
    const auto target = dir_ / file_name(snapshot.date);
    if (contains(snapshot.date) || fs::exists(target))
        throw DuplicateDate("a snapshot for " + format_date(snapshot.date) + " already exists");

    const auto tmp = dir_ / ("." + file_name(snapshot.date) + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UnwritableStore("cannot write " + tmp.string());
        out << write_snapshot(snapshot);
        out.flush();
        if (!out) throw UnwritableStore("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw UnwritableStore("cannot move snapshot into place at " + target.string());
    }
    index_.emplace(snapshot.date, target);
}

std::vector<Date> SnapshotStore::dates() const {
    std::vector<Date> out;
    for (const auto& [date, path] : index_) out.push_back(date);
    return out;
}

Snapshot SnapshotStore::load(Date date) const {
    auto it = index_.find(date);
    if (it == index_.end()) throw Error("no snapshot for " + format_date(date));
    auto snap = parse_snapshot(detail::read_file(it->second.string()), it->second.string());
    if (snap.date != date)
        throw BadSnapshotFile("header date does not match file name", 1, it->second.string());
    return snap;
}

std::vector<Snapshot> SnapshotStore::load_all() const {
    std::vector<Snapshot> out;
    for (const auto& [date, path] : index_) out.push_back(load(date));
    return out;
}

// ---------------------------------------------------------------------------
// Deltas

std::int64_t PeriodDelta::total() const {
    std::int64_t sum = 0;
    for (const auto& [id, d] : per_article) sum += d;
    return sum;
}

PeriodDelta period_delta(const Snapshot& earlier, const Snapshot& later) {
    if (!(earlier.date < later.date))
        throw BadOrder("period start " + format_date(earlier.date) + " is not before end " +
                       format_date(later.date));
    PeriodDelta delta;
    delta.start_date = earlier.date;
    delta.end_date = later.date;
    for (const auto& [id, now] : later.usage) {
        auto it = earlier.usage.find(id);
        const std::uint64_t before = it == earlier.usage.end() ? 0 : it->second;
        const auto d = static_cast<std::int64_t>(now) - static_cast<std::int64_t>(before);
        delta.per_article.emplace(id, d);
        if (d < 0) delta.valid = false;
    }
    if (!delta.valid) delta.invalid_reason = "negative delta";
    return delta;
}

std::vector<PeriodDelta> consecutive_deltas(std::vector<Snapshot> snapshots) {
    std::sort(snapshots.begin(), snapshots.end(),
              [](const Snapshot& a, const Snapshot& b) { return a.date < b.date; });
    std::vector<PeriodDelta> out;
    for (std::size_t i = 1; i < snapshots.size(); ++i)
        out.push_back(period_delta(snapshots[i - 1], snapshots[i]));
    return out;
}

Period parse_period(std::string_view text) {
    const auto sep = text.find("..");
    if (sep == std::string_view::npos)
        throw Error("invalid period '" + std::string(text) + "', expected YYYY-MM-DD..YYYY-MM-DD");
    Period p{parse_date(detail::trim(text.substr(0, sep))),
             parse_date(detail::trim(text.substr(sep + 2)))};
    if (!(p.first < p.second))
        throw Error("invalid period '" + std::string(text) + "': start must precede end");
    return p;
}

std::string format_period(const Period& period) {
    return format_date(period.first) + ".." + format_date(period.second);
}

ExcludedPeriods ExcludedPeriods::parse(std::span<const std::string> periods) {
    ExcludedPeriods out;
    for (const auto& p : periods) out.add(parse_period(p));
    return out;
}

// ---------------------------------------------------------------------------
// Trends

std::string_view to_string(Trend trend) {
    switch (trend) {
        case Trend::Stable: return "stable";
        case Trend::Emerging: return "emerging";
        case Trend::Declining: return "declining";
        case Trend::Volatile: return "volatile";
        case Trend::Inactive: return "inactive";
    }
    return "unknown";
}

Trend classify_trend(std::span<const double> values, const TrendThresholds& t) {
    const double eps = t.epsilon;
    if (std::all_of(values.begin(), values.end(), [eps](double v) { return v < eps; }))
        return Trend::Inactive;

    const std::size_t n = values.size();
    const std::size_t window = std::min(n, std::max(t.min_window, n / 3));
    const double early = mean(values.first(window));
    const double late = mean(values.last(window));

    if (late >= t.factor * early && late >= eps) return Trend::Emerging;
    if (early >= t.factor * late && early >= eps) return Trend::Declining;

    const double mu = mean(values);
    double var = 0.0;
    for (double v : values) var += (v - mu) * (v - mu);
    var /= static_cast<double>(n);
    const double cv = std::sqrt(var) / mu;
    return cv <= t.cv_cutoff ? Trend::Stable : Trend::Volatile;
}

std::vector<double> TopicSeries::values() const {
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(p.ratio2);
    return out;
}

TopicSeries ratio2_series(std::span<const PeriodDelta> periods, const TopicIndex& index,
                          const Topic& topic, const ExcludedPeriods& excluded,
                          const SeriesOptions& options) {
    TopicSeries series;
    series.topic = topic;
    if (!index.knows(topic)) {
        series.unknown_topic = true;
        series.classification = Trend::Inactive;
        return series;
    }

    for (const auto& period : periods) {
        if (excluded.contains(period.start_date, period.end_date)) {
            ++series.excluded_periods;
            continue;
        }
        if (!period.valid) {
            ++series.invalid_periods;
            if (!options.include_invalid) continue;
        }
        SeriesPoint point;
        point.period_start = period.start_date;
        point.period_end = period.end_date;
        point.invalid_included = !period.valid;
        for (const auto& [id, d] : period.per_article) {
            point.total_usage += d;
            const auto* topics = index.topics(id);
            if (topics && topics->count(topic)) point.topic_usage += d;
        }
        if (point.total_usage == 0) {
            point.zero_denominator = true;
            point.ratio2 = 0.0;
        } else {
            point.ratio2 = static_cast<double>(point.topic_usage) /
                           static_cast<double>(point.total_usage);
        }
        series.points.push_back(point);
    }
    series.classification = classify_trend(series.values(), options.thresholds);
    return series;
}

TopicSeries ratio2_series(const SnapshotStore& store, const std::vector<ArticleRecord>& records,
                          const PipelineConfig& config, const Topic& topic,
                          const ExcludedPeriods& excluded, const SeriesOptions& options) {
    if (store.size() < 2) throw InsufficientSnapshots();
    const auto deltas = consecutive_deltas(store.load_all());
    return ratio2_series(deltas, index_topics(records, config), topic, excluded, options);
}

}  // namespace hottopics
