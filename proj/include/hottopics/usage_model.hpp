#pragma once

// Article usage aggregated to topic usage.
//
// Every article passes its full usage count on to each of its distinct
// topics. A topic's Ratio1 is its usage total divided by the usage of the
// whole corpus, including articles that yielded no topic at all.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hottopics/keywords.hpp"
#include "hottopics/wos_export.hpp"

namespace hottopics {

/// Topic sets per article, plus the articles that yielded none.
struct TopicIndex {
    std::map<std::string, std::set<Topic>> by_article;
    std::vector<std::string> empty_yield;

    const std::set<Topic>* topics(const std::string& accession_id) const;
    bool knows(const Topic& topic) const;
};

/// Runs the keyword pipeline over every record. With `threads > 1` the
/// records are split into contiguous chunks; the result does not depend on
/// the thread count.
TopicIndex index_topics(const std::vector<ArticleRecord>& records, const PipelineConfig& config,
                        unsigned threads = 1);

struct TopicStats {
    Topic topic;
    std::uint64_t frequency = 0;    // articles carrying the topic
    std::uint64_t usage_total = 0;  // summed usage_since_2013 of those articles
    double ratio1 = 0.0;

    bool operator==(const TopicStats&) const = default;
};

struct CorpusStats {
    std::map<Topic, TopicStats> topics;
    std::uint64_t total_usage = 0;  // over all records
    std::size_t record_count = 0;
    std::vector<std::string> empty_yield;
    /// Set when total_usage is 0; every ratio1 is then reported as 0.
    bool zero_usage = false;
};

/// Throws EmptyCorpus for an empty record list.
CorpusStats aggregate(const std::vector<ArticleRecord>& records, const TopicIndex& index);
CorpusStats aggregate(const std::vector<ArticleRecord>& records, const PipelineConfig& config,
                      unsigned threads = 1);

/// Descending frequency, then usage, then byte-wise topic order.
/// Returns min(k, size) entries; k must be at least 1.
std::vector<TopicStats> top_by_frequency(const std::map<Topic, TopicStats>& stats, std::size_t k);

/// Descending usage, then frequency, then byte-wise topic order.
std::vector<TopicStats> top_by_usage(const std::map<Topic, TopicStats>& stats, std::size_t k);

/// Top-k membership split three ways.
struct QuadrantSets {
    std::set<Topic> both;
    std::set<Topic> freq_only;
    std::set<Topic> usage_only;
    std::size_t k = 0;

    bool operator==(const QuadrantSets&) const = default;
};

QuadrantSets quadrants(const std::map<Topic, TopicStats>& stats, std::size_t k);

/// Same split from two rankings that are already ordered best-first, for
/// instance fixed lists. Only the first k entries of each are used.
QuadrantSets quadrants_from_rankings(std::span<const Topic> by_frequency,
                                     std::span<const Topic> by_usage, std::size_t k);

/// `ratio` as a percentage with two decimals, e.g. 0.0807 -> "8.07%".
std::string format_percent(double ratio);

}  // namespace hottopics
