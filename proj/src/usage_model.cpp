#include "hottopics/usage_model.hpp"

#include <algorithm>
#include <thread>

#include <fmt/format.h>

#include "hottopics/error.hpp"

namespace hottopics {

namespace {

void require_k(std::size_t k) {
    if (k == 0) throw Error("top-k cutoff must be at least 1");
}

template <typename Less>
std::vector<TopicStats> top_k(const std::map<Topic, TopicStats>& stats, std::size_t k, Less less) {
    require_k(k);
    std::vector<TopicStats> ranked;
    ranked.reserve(stats.size());
    for (const auto& [topic, s] : stats) ranked.push_back(s);
    const auto n = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(n),
                      ranked.end(), less);
    ranked.resize(n);
    return ranked;
}

struct IndexChunk {
    std::vector<std::pair<std::string, std::set<Topic>>> topics;
    std::vector<std::string> empty_yield;
};

IndexChunk index_range(const std::vector<ArticleRecord>& records, std::size_t begin,
                       std::size_t end, const PipelineConfig& config) {
    IndexChunk chunk;
    for (std::size_t i = begin; i < end; ++i) {
        const auto& r = records[i];
        try {
            chunk.topics.emplace_back(r.accession_id, topics_of(r, config));
        } catch (const EmptyYield&) {
            chunk.empty_yield.push_back(r.accession_id);
        }
    }
    return chunk;
}

}  // namespace

const std::set<Topic>* TopicIndex::topics(const std::string& accession_id) const {
    auto it = by_article.find(accession_id);
    return it == by_article.end() ? nullptr : &it->second;
}

bool TopicIndex::knows(const Topic& topic) const {
    for (const auto& [id, topics] : by_article)
        if (topics.count(topic)) return true;
    return false;
}

TopicIndex index_topics(const std::vector<ArticleRecord>& records, const PipelineConfig& config,
                        unsigned threads) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(records.size())));
    std::vector<IndexChunk> chunks(threads);
    if (threads == 1) {
        chunks[0] = index_range(records, 0, records.size(), config);
    } else {
        const std::size_t per = (records.size() + threads - 1) / threads;
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t begin = std::min(records.size(), t * per);
            const std::size_t end = std::min(records.size(), begin + per);
            workers.emplace_back([&, t, begin, end] {
                chunks[t] = index_range(records, begin, end, config);
            });
        }
        for (auto& w : workers) w.join();
    }

    // Chunks are contiguous, so concatenating them keeps record order.
    TopicIndex index;
    for (auto& c : chunks) {
        for (auto& [id, topics] : c.topics) index.by_article[id] = std::move(topics);
        index.empty_yield.insert(index.empty_yield.end(), c.empty_yield.begin(),
                                 c.empty_yield.end());
    }
    return index;
}

CorpusStats aggregate(const std::vector<ArticleRecord>& records, const TopicIndex& index) {
    if (records.empty()) throw EmptyCorpus();

    CorpusStats out;
    out.record_count = records.size();
    for (const auto& r : records) {
        out.total_usage += r.usage_since_2013;
        const auto* topics = index.topics(r.accession_id);
        if (!topics) {
            out.empty_yield.push_back(r.accession_id);
            continue;
        }
        for (const auto& t : *topics) {
            auto& s = out.topics[t];
            s.topic = t;
            s.frequency += 1;
            s.usage_total += r.usage_since_2013;
        }
    }

    out.zero_usage = out.total_usage == 0;
    for (auto& [topic, s] : out.topics) {
        s.ratio1 = out.zero_usage ? 0.0
                                  : static_cast<double>(s.usage_total) /
                                        static_cast<double>(out.total_usage);
    }
    return out;
}

CorpusStats aggregate(const std::vector<ArticleRecord>& records, const PipelineConfig& config,
                      unsigned threads) {
    if (records.empty()) throw EmptyCorpus();
    return aggregate(records, index_topics(records, config, threads));
}

std::vector<TopicStats> top_by_frequency(const std::map<Topic, TopicStats>& stats,
                                         std::size_t k) {
    return top_k(stats, k, [](const TopicStats& a, const TopicStats& b) {
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        if (a.usage_total != b.usage_total) return a.usage_total > b.usage_total;
        return a.topic < b.topic;
    });
}

std::vector<TopicStats> top_by_usage(const std::map<Topic, TopicStats>& stats, std::size_t k) {
    return top_k(stats, k, [](const TopicStats& a, const TopicStats& b) {
        if (a.usage_total != b.usage_total) return a.usage_total > b.usage_total;
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        return a.topic < b.topic;
    });
}

QuadrantSets quadrants_from_rankings(std::span<const Topic> by_frequency,
                                     std::span<const Topic> by_usage, std::size_t k) {
    require_k(k);
    const std::set<Topic> top_freq(by_frequency.begin(),
                                   by_frequency.begin() + static_cast<std::ptrdiff_t>(
                                                              std::min(k, by_frequency.size())));
    const std::set<Topic> top_usage(
        by_usage.begin(), by_usage.begin() + static_cast<std::ptrdiff_t>(std::min(k, by_usage.size())));

    QuadrantSets q;
    q.k = k;
    for (const auto& t : top_freq) (top_usage.count(t) ? q.both : q.freq_only).insert(t);
    for (const auto& t : top_usage)
        if (!top_freq.count(t)) q.usage_only.insert(t);
    return q;
}

QuadrantSets quadrants(const std::map<Topic, TopicStats>& stats, std::size_t k) {
    auto topics = [](const std::vector<TopicStats>& ranked) {
        std::vector<Topic> out;
        for (const auto& s : ranked) out.push_back(s.topic);
        return out;
    };
    const auto freq = topics(top_by_frequency(stats, k));
    const auto usage = topics(top_by_usage(stats, k));
    return quadrants_from_rankings(freq, usage, k);
}

std::string format_percent(double ratio) {
    return fmt::format("{:.2f}%", ratio * 100.0);
}

}  // namespace hottopics
