#pragma once

// Dated usage snapshots and per-period topic shares (Ratio2).
//
// A snapshot holds every article's cumulative "since 2013" usage count on
// one date. Consecutive snapshots give per-period deltas; a topic's Ratio2
// for a period is the usage its articles gained divided by the usage all
// articles gained.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hottopics/keywords.hpp"
#include "hottopics/usage_model.hpp"
#include "hottopics/wos_export.hpp"

namespace hottopics {

using Date = std::chrono::year_month_day;

/// Strict YYYY-MM-DD. Throws Error on anything else, including
/// impossible dates such as 2015-02-30.
Date parse_date(std::string_view text);
std::string format_date(Date date);

struct Snapshot {
    Date date;
    std::map<std::string, std::uint64_t> usage;  // accession_id -> usage_since_2013
    std::string source_file;

    bool operator==(const Snapshot&) const = default;
};

Snapshot snapshot_from_records(const std::vector<ArticleRecord>& records, Date date);

/// "#date: YYYY-MM-DD" then "id<TAB>count" lines sorted by id.
std::string write_snapshot(const Snapshot& snapshot);
Snapshot parse_snapshot(std::string_view text, const std::string& source = {});

/// Directory of append-only snapshot files, one per date.
class SnapshotStore {
public:
    /// Opens (creating if needed) a store directory and indexes its files.
    static SnapshotStore open(const std::filesystem::path& dir);

    /// Persists a new snapshot. Throws DuplicateDate if the date is
    /// already stored and UnwritableStore on I/O failure. Existing files
    /// are never rewritten.
    void add(const Snapshot& snapshot);

    bool contains(Date date) const { return index_.count(date) != 0; }
    std::size_t size() const { return index_.size(); }
    /// Ascending.
    std::vector<Date> dates() const;
    Snapshot load(Date date) const;
    /// All snapshots in ascending date order.
    std::vector<Snapshot> load_all() const;
    const std::filesystem::path& directory() const { return dir_; }

    static std::string file_name(Date date);

private:
    explicit SnapshotStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

    std::filesystem::path dir_;
    std::map<Date, std::filesystem::path> index_;
};

struct PeriodDelta {
    Date start_date;
    Date end_date;
    std::map<std::string, std::int64_t> per_article;
    bool valid = true;
    std::optional<std::string> invalid_reason;

    std::int64_t total() const;
};

/// Usage gained per article between two snapshots. Articles that first
/// appear in `later` count from an implicit 0; articles missing from
/// `later` are left out. Any negative delta marks the period invalid.
/// Throws BadOrder unless earlier.date < later.date.
PeriodDelta period_delta(const Snapshot& earlier, const Snapshot& later);

/// Deltas between each pair of consecutive snapshots (sorted by date first).
std::vector<PeriodDelta> consecutive_deltas(std::vector<Snapshot> snapshots);

/// A period written as "YYYY-MM-DD..YYYY-MM-DD".
using Period = std::pair<Date, Date>;
Period parse_period(std::string_view text);
std::string format_period(const Period& period);

class ExcludedPeriods {
public:
    ExcludedPeriods() = default;
    static ExcludedPeriods parse(std::span<const std::string> periods);

    void add(const Period& p) { periods_.insert(p); }
    bool contains(Date start, Date end) const { return periods_.count({start, end}) != 0; }
    bool empty() const { return periods_.empty(); }
    const std::set<Period>& periods() const { return periods_; }

private:
    std::set<Period> periods_;
};

enum class Trend { Stable, Emerging, Declining, Volatile, Inactive };

std::string_view to_string(Trend trend);

struct TrendThresholds {
    double epsilon = 0.001;        // shares below this count as unused
    double factor = 2.0;           // late/early ratio for emerging, early/late for declining
    double cv_cutoff = 0.35;       // coefficient of variation for stable
    std::size_t min_window = 2;    // points in the early and late windows
};

/// Labels a Ratio2 series. The early and late windows are the first and
/// last third of the points (at least `min_window` each). Checked in order:
/// inactive (every point < epsilon), emerging, declining, stable, volatile.
/// An empty series is inactive.
Trend classify_trend(std::span<const double> values, const TrendThresholds& thresholds = {});

struct SeriesPoint {
    Date period_start;
    Date period_end;
    double ratio2 = 0.0;
    std::int64_t topic_usage = 0;
    std::int64_t total_usage = 0;
    bool zero_denominator = false;  // ratio2 reported as 0
    bool invalid_included = false;  // an invalid period kept by override
};

struct TopicSeries {
    Topic topic;
    std::vector<SeriesPoint> points;
    Trend classification = Trend::Inactive;
    /// The topic occurs in no record; the series is empty.
    bool unknown_topic = false;
    std::size_t excluded_periods = 0;
    std::size_t invalid_periods = 0;

    std::vector<double> values() const;
};

struct SeriesOptions {
    /// Keep periods that were auto-invalidated by negative deltas.
    bool include_invalid = false;
    TrendThresholds thresholds;
};

TopicSeries ratio2_series(std::span<const PeriodDelta> periods, const TopicIndex& index,
                          const Topic& topic, const ExcludedPeriods& excluded,
                          const SeriesOptions& options = {});

/// Convenience over a store. Throws InsufficientSnapshots with fewer than
/// two snapshots.
TopicSeries ratio2_series(const SnapshotStore& store, const std::vector<ArticleRecord>& records,
                          const PipelineConfig& config, const Topic& topic,
                          const ExcludedPeriods& excluded, const SeriesOptions& options = {});

}  // namespace hottopics
