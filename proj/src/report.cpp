#include "hottopics/report.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "hottopics/error.hpp"

namespace hottopics {

using nlohmann::json;

namespace {

std::string percent_value(double ratio) {
    return fmt::format("{:.2f}", ratio * 100.0);
}

std::vector<std::string> point_flags(const SeriesPoint& p) {
    std::vector<std::string> flags;
    if (p.zero_denominator) flags.emplace_back("zero_denominator");
    if (p.invalid_included) flags.emplace_back("invalid_period");
    return flags;
}

json topic_list(const std::set<Topic>& topics) {
    json arr = json::array();
    for (const auto& t : topics) arr.push_back(t.canonical);
    return arr;
}

}  // namespace

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw Error("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

std::string csv_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string ranked_table(const std::vector<TopicStats>& ranked, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json rows = json::array();
        std::size_t rank = 0;
        for (const auto& s : ranked) {
            rows.push_back({{"rank", ++rank},
                            {"topic", s.topic.canonical},
                            {"frequency", s.frequency},
                            {"usage_total", s.usage_total},
                            {"ratio1", s.ratio1},
                            {"ratio1_percent", percent_value(s.ratio1)}});
        }
        return rows.dump(2) + "\n";
    }
    std::string out = "rank,topic,frequency,usage_total,ratio1_percent\n";
    std::size_t rank = 0;
    for (const auto& s : ranked) {
        out += fmt::format("{},{},{},{},{}\n", ++rank, csv_field(s.topic.canonical), s.frequency,
                           s.usage_total, percent_value(s.ratio1));
    }
    return out;
}

std::string quadrant_json(const QuadrantSets& q) {
    json doc = {{"k", q.k},
                {"both", topic_list(q.both)},
                {"freq_only", topic_list(q.freq_only)},
                {"usage_only", topic_list(q.usage_only)}};
    return doc.dump(2) + "\n";
}

std::string series_table(const std::vector<TopicSeries>& series, OutputFormat format) {
    if (format == OutputFormat::Json) {
        json arr = json::array();
        for (const auto& s : series) {
            json points = json::array();
            for (const auto& p : s.points) {
                points.push_back({{"period_start", format_date(p.period_start)},
                                  {"period_end", format_date(p.period_end)},
                                  {"ratio2", p.ratio2},
                                  {"topic_usage", p.topic_usage},
                                  {"total_usage", p.total_usage},
                                  {"flags", point_flags(p)}});
            }
            arr.push_back({{"topic", s.topic.canonical},
                           {"classification", std::string(to_string(s.classification))},
                           {"points", std::move(points)}});
        }
        return json{{"series", std::move(arr)}}.dump(2) + "\n";
    }

    std::string out = "topic,period_start,period_end,ratio2,flags\n";
    for (const auto& s : series) {
        for (const auto& p : s.points) {
            std::string flags;
            for (const auto& f : point_flags(p)) flags += (flags.empty() ? "" : ";") + f;
            out += fmt::format("{},{},{},{},{}\n", csv_field(s.topic.canonical),
                               format_date(p.period_start), format_date(p.period_end), p.ratio2,
                               flags);
        }
    }
    out += "\ntopic,classification\n";
    for (const auto& s : series)
        out += fmt::format("{},{}\n", csv_field(s.topic.canonical), to_string(s.classification));
    return out;
}

}  // namespace hottopics
