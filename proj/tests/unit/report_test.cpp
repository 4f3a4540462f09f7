#include <doctest.h>

#include <nlohmann/json.hpp>

#include "hottopics/error.hpp"
#include "hottopics/report.hpp"

using namespace hottopics;

TEST_CASE("csv quoting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("ranked table csv and json") {
    const std::vector<TopicStats> ranked = {{Topic{"fmri"}, 3, 16652, 16652.0 / 206345.0},
                                            {Topic{"a,b"}, 1, 0, 0.0}};
    CHECK(ranked_table(ranked, OutputFormat::Csv) ==
          "rank,topic,frequency,usage_total,ratio1_percent\n1,fmri,3,16652,8.07\n2,\"a,b\",1,0,0.00\n");
    const auto doc = nlohmann::json::parse(ranked_table(ranked, OutputFormat::Json));
    REQUIRE(doc.size() == 2);
    CHECK(doc[0]["rank"] == 1);
    CHECK(doc[0]["topic"] == "fmri");
    CHECK(doc[0]["ratio1_percent"] == "8.07");
    CHECK(doc[1]["usage_total"] == 0);
    CHECK(ranked_table({}, OutputFormat::Csv) == "rank,topic,frequency,usage_total,ratio1_percent\n");
}

TEST_CASE("series table flags and classification section") {
    TopicSeries s;
    s.topic = Topic{"eeg"};
    SeriesPoint a;
    a.period_start = parse_date("2015-10-19");
    a.period_end = parse_date("2015-10-26");
    a.ratio2 = 0.5;
    SeriesPoint b = a;
    b.period_start = parse_date("2015-10-26");
    b.period_end = parse_date("2015-11-02");
    b.ratio2 = 0.0;
    b.zero_denominator = true;
    b.invalid_included = true;
    s.points = {a, b};
    s.classification = Trend::Declining;
    CHECK(series_table({s}, OutputFormat::Csv) ==
          "topic,period_start,period_end,ratio2,flags\n"
          "eeg,2015-10-19,2015-10-26,0.5,\n"
          "eeg,2015-10-26,2015-11-02,0,zero_denominator;invalid_period\n"
          "\n"
          "topic,classification\n"
          "eeg,declining\n");
    const auto doc = nlohmann::json::parse(series_table({s}, OutputFormat::Json));
    CHECK(doc["series"][0]["classification"] == "declining");
    CHECK(doc["series"][0]["points"][1]["flags"].size() == 2);
}

TEST_CASE("output format names") {
    CHECK(parse_output_format("csv") == OutputFormat::Csv);
    CHECK(parse_output_format("json") == OutputFormat::Json);
    CHECK_THROWS_AS(parse_output_format("xml"), Error);
}
