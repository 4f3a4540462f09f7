#pragma once

// CSV and JSON renderings of rankings, quadrant sets and Ratio2 series.
// Output is byte-for-byte deterministic for identical input.

#include <string>
#include <string_view>
#include <vector>

#include "hottopics/snapshot.hpp"
#include "hottopics/usage_model.hpp"

namespace hottopics {

enum class OutputFormat { Csv, Json };

/// "csv" or "json"; throws Error otherwise.
OutputFormat parse_output_format(std::string_view text);

/// Columns rank,topic,frequency,usage_total,ratio1_percent. Ranks start at 1.
std::string ranked_table(const std::vector<TopicStats>& ranked, OutputFormat format);

/// {"k": .., "both": [..], "freq_only": [..], "usage_only": [..]}
std::string quadrant_json(const QuadrantSets& q);

/// CSV: topic,period_start,period_end,ratio2,flags rows for every series,
/// then a blank line and a topic,classification section.
std::string series_table(const std::vector<TopicSeries>& series, OutputFormat format);

/// RFC 4180 quoting when the field needs it.
std::string csv_field(std::string_view field);

}  // namespace hottopics
