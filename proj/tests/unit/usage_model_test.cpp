#include <doctest.h>

#include <random>

#include "hottopics/error.hpp"
#include "hottopics/usage_model.hpp"
#include "oracle/brute_force.hpp"
#include "oracle/random_corpus.hpp"

using namespace hottopics;

namespace {

ArticleRecord rec(std::string id, std::vector<std::string> de, std::uint64_t usage) {
    ArticleRecord r;
    r.accession_id = std::move(id);
    r.author_keywords = std::move(de);
    r.usage_since_2013 = usage;
    return r;
}

std::map<Topic, TopicStats> stats_of(std::initializer_list<TopicStats> list) {
    std::map<Topic, TopicStats> out;
    for (const auto& s : list) out[s.topic] = s;
    return out;
}

std::vector<std::string> names(const std::vector<TopicStats>& ranked) {
    std::vector<std::string> out;
    for (const auto& s : ranked) out.push_back(s.topic.canonical);
    return out;
}

std::vector<std::string> names(const std::set<Topic>& topics) {
    std::vector<std::string> out;
    for (const auto& t : topics) out.push_back(t.canonical);
    return out;
}

}  // namespace

TEST_CASE("each article passes its full usage to every topic") {
    const std::vector<ArticleRecord> records = {rec("A", {"fMRI", "EEG"}, 10), rec("B", {"fMRI"}, 5)};
    const auto stats = aggregate(records, PipelineConfig::builtin());
    CHECK(stats.total_usage == 15);
    CHECK(stats.record_count == 2);
    CHECK_FALSE(stats.zero_usage);
    REQUIRE(stats.topics.size() == 2);
    const auto& fmri = stats.topics.at(Topic{"fmri"});
    CHECK(fmri.frequency == 2);
    CHECK(fmri.usage_total == 15);
    CHECK(fmri.ratio1 == doctest::Approx(1.0).epsilon(1e-15));
    const auto& eeg = stats.topics.at(Topic{"eeg"});
    CHECK(eeg.frequency == 1);
    CHECK(eeg.usage_total == 10);
    CHECK(eeg.ratio1 == doctest::Approx(10.0 / 15.0).epsilon(1e-15));
}

TEST_CASE("a topic repeated within one article counts once") {
    const std::vector<ArticleRecord> records = {rec("A", {"EEG", "eeg", "Eeg"}, 7)};
    const auto stats = aggregate(records, PipelineConfig::builtin());
    CHECK(stats.topics.at(Topic{"eeg"}).frequency == 1);
    CHECK(stats.topics.at(Topic{"eeg"}).usage_total == 7);
}

TEST_CASE("articles without topics still count toward total usage") {
    ArticleRecord none;
    none.accession_id = "Z";
    none.title = "The of and";
    none.usage_since_2013 = 30;
    const std::vector<ArticleRecord> records = {rec("A", {"eeg"}, 10), none};
    const auto stats = aggregate(records, PipelineConfig::builtin());
    CHECK(stats.total_usage == 40);
    CHECK(stats.empty_yield == std::vector<std::string>{"Z"});
    CHECK(stats.topics.at(Topic{"eeg"}).ratio1 == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("percent formatting to two decimals") {
    CHECK(format_percent(16652.0 / 206345.0) == "8.07%");
    CHECK(format_percent(0.0) == "0.00%");
    CHECK(format_percent(1.0) == "100.00%");
    CHECK(format_percent(0.12345) == "12.35%");
}

TEST_CASE("an empty corpus is an error") {
    CHECK_THROWS_AS(aggregate({}, PipelineConfig::builtin()), EmptyCorpus);
}

TEST_CASE("an all-zero-usage corpus reports zero ratios") {
    const std::vector<ArticleRecord> records = {rec("A", {"eeg"}, 0), rec("B", {"fmri", "eeg"}, 0)};
    const auto stats = aggregate(records, PipelineConfig::builtin());
    CHECK(stats.zero_usage);
    CHECK(stats.total_usage == 0);
    for (const auto& [topic, s] : stats.topics) CHECK(s.ratio1 == 0.0);
    CHECK(names(top_by_frequency(stats.topics, 5)) == std::vector<std::string>{"eeg", "fmri"});
}

TEST_CASE("frequency ties break on usage then topic") {
    const auto stats = stats_of({{Topic{"b"}, 3, 10, 0}, {Topic{"a"}, 3, 10, 0},
                                 {Topic{"c"}, 3, 20, 0}, {Topic{"d"}, 4, 1, 0}});
    CHECK(names(top_by_frequency(stats, 4)) == std::vector<std::string>{"d", "c", "a", "b"});
    CHECK(names(top_by_frequency(stats, 2)) == std::vector<std::string>{"d", "c"});
}

TEST_CASE("usage ties break on frequency then topic") {
    const auto stats = stats_of({{Topic{"b"}, 2, 50, 0}, {Topic{"a"}, 2, 50, 0},
                                 {Topic{"c"}, 5, 50, 0}, {Topic{"d"}, 1, 60, 0}});
    CHECK(names(top_by_usage(stats, 10)) == std::vector<std::string>{"d", "c", "a", "b"});
}

TEST_CASE("top k of fewer topics returns them all; k of 0 is rejected") {
    const auto stats = stats_of({{Topic{"a"}, 1, 1, 0}});
    CHECK(top_by_frequency(stats, 20).size() == 1);
    CHECK(top_by_usage(stats, 20).size() == 1);
    CHECK_THROWS_AS(top_by_frequency(stats, 0), Error);
    CHECK_THROWS_AS(top_by_usage(stats, 0), Error);
    CHECK_THROWS_AS(quadrants(stats, 0), Error);
    CHECK(top_by_frequency({}, 3).empty());
}

TEST_CASE("disjoint top-1 lists") {
    const std::vector<ArticleRecord> records = {rec("A", {"x"}, 1), rec("B", {"x"}, 1),
                                                rec("C", {"y"}, 10)};
    const auto stats = aggregate(records, PipelineConfig::builtin());
    const auto q = quadrants(stats.topics, 1);
    CHECK(q.both.empty());
    CHECK(names(q.freq_only) == std::vector<std::string>{"x"});
    CHECK(names(q.usage_only) == std::vector<std::string>{"y"});
    CHECK(q.k == 1);
}

TEST_CASE("quadrants from ordered rankings use only the first k") {
    const std::vector<Topic> f = {Topic{"a"}, Topic{"b"}, Topic{"c"}, Topic{"z"}};
    const std::vector<Topic> u = {Topic{"c"}, Topic{"d"}, Topic{"a"}, Topic{"b"}};
    const auto q = quadrants_from_rankings(f, u, 3);
    CHECK(names(q.both) == std::vector<std::string>{"a", "c"});
    CHECK(names(q.freq_only) == std::vector<std::string>{"b"});
    CHECK(names(q.usage_only) == std::vector<std::string>{"d"});
}

TEST_CASE("parallel indexing matches sequential") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 20; ++iter) {
        const auto c = gen::random_case(rng);
        const auto cfg = PipelineConfig::builtin();
        const auto one = index_topics(c.records, cfg, 1);
        for (unsigned threads : {2u, 3u, 8u, 64u}) {
            const auto many = index_topics(c.records, cfg, threads);
            CHECK(many.by_article == one.by_article);
            CHECK(many.empty_yield == one.empty_yield);
        }
    }
}

TEST_CASE("property: aggregation, rankings and quadrants agree with brute force") {
    std::mt19937_64 rng(2015);
    const auto cfg = PipelineConfig::builtin();
    for (int iter = 0; iter < 100; ++iter) {
        const auto c = gen::random_case(rng);
        const auto got = aggregate(c.records, cfg);
        const auto want = oracle::aggregate(c.records);
        REQUIRE(got.topics.size() == want.size());
        for (const auto& w : want) {
            const auto& g = got.topics.at(Topic{w.topic});
            CHECK(g.frequency == w.frequency);
            CHECK(g.usage_total == w.usage_total);
            CHECK(std::abs(g.ratio1 - w.ratio1) <= 1e-12);
        }
        const std::size_t k = gen::uniform(rng, 1, 6);
        const auto tf = top_by_frequency(got.topics, k);
        const auto tu = top_by_usage(got.topics, k);
        const auto of = oracle::top(want, k, oracle::Key::Frequency);
        const auto ou = oracle::top(want, k, oracle::Key::Usage);
        std::vector<std::string> of_names, ou_names;
        for (const auto& s : of) of_names.push_back(s.topic);
        for (const auto& s : ou) ou_names.push_back(s.topic);
        CHECK(names(tf) == of_names);
        CHECK(names(tu) == ou_names);

        const auto q = quadrants(got.topics, k);
        const auto oq = oracle::quadrants(of_names, ou_names);
        CHECK(names(q.both) == oq.both);
        CHECK(names(q.freq_only) == oq.freq_only);
        CHECK(names(q.usage_only) == oq.usage_only);

        // Partition sizes.
        const auto m = std::min(k, got.topics.size());
        CHECK(q.both.size() + q.freq_only.size() == m);
        CHECK(q.both.size() + q.usage_only.size() == m);
    }
}

TEST_CASE("property: ratio1 sums to at least 1 and raising usage never lowers a topic's total") {
    std::mt19937_64 rng(4242);
    const auto cfg = PipelineConfig::builtin();
    for (int iter = 0; iter < 100; ++iter) {
        auto c = gen::random_case(rng);
        const auto before = aggregate(c.records, cfg);
        if (!before.zero_usage) {
            double sum = 0;
            for (const auto& [t, s] : before.topics) sum += s.ratio1;
            // Multi-topic articles are counted once per topic; topicless ones count nowhere.
            if (before.empty_yield.empty()) CHECK(sum >= 1.0 - 1e-12);
        }
        auto& r = c.records[gen::uniform(rng, 0, c.records.size() - 1)];
        r.usage_since_2013 += gen::uniform(rng, 1, 100);
        const auto after = aggregate(c.records, cfg);
        for (const auto& [t, s] : before.topics) {
            CHECK(after.topics.at(t).usage_total >= s.usage_total);
            CHECK(after.topics.at(t).frequency == s.frequency);
        }
    }
}
