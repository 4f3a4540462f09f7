#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "hottopics/error.hpp"
#include "hottopics/keywords.hpp"
#include "hottopics/porter_stemmer.hpp"
#include "hottopics/snapshot.hpp"
#include "hottopics/usage_model.hpp"
#include "hottopics/wos_export.hpp"

namespace py = pybind11;
using namespace hottopics;

namespace {

// Topics cross the boundary as plain strings.
std::vector<std::string> to_strings(const std::set<Topic>& topics) {
    std::vector<std::string> out;
    out.reserve(topics.size());
    for (const auto& t : topics) out.push_back(t.canonical);
    return out;
}

std::vector<Topic> to_topics(const std::vector<std::string>& names) {
    std::vector<Topic> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(Topic{n});
    return out;
}

PipelineConfig load_pipeline(const std::optional<std::string>& stopwords,
                             const std::optional<std::string>& synonyms,
                             const std::optional<std::string>& phrases) {
    auto config = PipelineConfig::builtin();
    if (stopwords) config.stopwords = StopwordList::load(*stopwords);
    if (synonyms) config.synonyms = SynonymTable::load(*synonyms);
    if (phrases) config.title_phrases = PhraseDictionary::load(*phrases);
    return config;
}

py::dict quadrant_dict(const QuadrantSets& q) {
    py::dict d;
    d["k"] = q.k;
    d["both"] = to_strings(q.both);
    d["freq_only"] = to_strings(q.freq_only);
    d["usage_only"] = to_strings(q.usage_only);
    return d;
}

}  // namespace

PYBIND11_MODULE(_hottopics, m) {
    m.doc() = "Topic extraction, usage aggregation and trend tracking";

    // Exceptions
    static py::exception<Error> base(m, "HotTopicsError");
    static py::exception<MalformedRecord> malformed(m, "MalformedRecord", base.ptr());
    static py::exception<DuplicateAccession> duplicate(m, "DuplicateAccession", base.ptr());
    static py::exception<BadUsageValue> bad_usage(m, "BadUsageValue", base.ptr());
    static py::exception<EncodingError> encoding(m, "EncodingError", base.ptr());
    static py::exception<ConfigError> config_error(m, "ConfigError", base.ptr());
    static py::exception<EmptyYield> empty_yield(m, "EmptyYield", base.ptr());
    static py::exception<EmptyCorpus> empty_corpus(m, "EmptyCorpus", base.ptr());
    static py::exception<BadOrder> bad_order(m, "BadOrder", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const MalformedRecord& e) {
            malformed(e.what());
        } catch (const DuplicateAccession& e) {
            duplicate(e.what());
        } catch (const BadUsageValue& e) {
            bad_usage(e.what());
        } catch (const EncodingError& e) {
            encoding(e.what());
        } catch (const ConfigError& e) {
            config_error(e.what());
        } catch (const EmptyYield& e) {
            empty_yield(e.what());
        } catch (const EmptyCorpus& e) {
            empty_corpus(e.what());
        } catch (const BadOrder& e) {
            bad_order(e.what());
        } catch (const Error& e) {
            base(e.what());
        }
    });

    // Records
    py::class_<ArticleRecord>(m, "ArticleRecord")
        .def(py::init<>())
        .def(py::init([](std::string id, std::vector<std::string> de, std::vector<std::string> kw,
                         std::string title, std::uint64_t usage) {
                 ArticleRecord r;
                 r.accession_id = std::move(id);
                 r.author_keywords = std::move(de);
                 r.keywords_plus = std::move(kw);
                 r.title = std::move(title);
                 r.usage_since_2013 = usage;
                 return r;
             }),
             py::arg("accession_id"), py::arg("author_keywords") = std::vector<std::string>{},
             py::arg("keywords_plus") = std::vector<std::string>{}, py::arg("title") = "",
             py::arg("usage_since_2013") = 0)
        .def_readwrite("accession_id", &ArticleRecord::accession_id)
        .def_readwrite("title", &ArticleRecord::title)
        .def_readwrite("author_keywords", &ArticleRecord::author_keywords)
        .def_readwrite("keywords_plus", &ArticleRecord::keywords_plus)
        .def_readwrite("pub_year", &ArticleRecord::pub_year)
        .def_readwrite("usage_180d", &ArticleRecord::usage_180d)
        .def_readwrite("usage_since_2013", &ArticleRecord::usage_since_2013)
        .def_readwrite("extra_fields", &ArticleRecord::extra_fields)
        .def(py::self == py::self)
        .def("__repr__", [](const ArticleRecord& r) {
            return "<ArticleRecord " + r.accession_id + ">";
        });

    m.def("parse_export", [](const std::string& text) { return parse_export(text); }, py::arg("text"));
    m.def("read_export_file", &read_export_file, py::arg("path"));
    m.def("write_export", &write_export, py::arg("records"));

    // Keywords
    m.def("stem_word", &stem_word, py::arg("word"));
    m.def("stem_phrase", &stem_phrase, py::arg("phrase"));
    m.def("tokenize", &tokenize, py::arg("text"));

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def_static("builtin", &PipelineConfig::builtin)
        .def_static("load", &load_pipeline, py::arg("stopwords") = py::none(),
                    py::arg("synonyms") = py::none(), py::arg("phrases") = py::none());

    m.def(
        "topics_of",
        [](const ArticleRecord& r, const std::optional<PipelineConfig>& config) {
            return to_strings(topics_of(r, config ? *config : PipelineConfig::builtin()));
        },
        py::arg("record"), py::arg("config") = py::none());

    // Usage model
    py::class_<TopicStats>(m, "TopicStats")
        .def_property_readonly("topic", [](const TopicStats& s) { return s.topic.canonical; })
        .def_readonly("frequency", &TopicStats::frequency)
        .def_readonly("usage_total", &TopicStats::usage_total)
        .def_readonly("ratio1", &TopicStats::ratio1)
        .def("__repr__", [](const TopicStats& s) {
            return "<TopicStats " + s.topic.canonical + " freq=" + std::to_string(s.frequency) +
                   " usage=" + std::to_string(s.usage_total) + ">";
        });

    py::class_<CorpusStats>(m, "CorpusStats")
        .def_property_readonly("topics",
                               [](const CorpusStats& c) {
                                   std::map<std::string, TopicStats> out;
                                   for (const auto& [t, s] : c.topics) out.emplace(t.canonical, s);
                                   return out;
                               })
        .def_readonly("total_usage", &CorpusStats::total_usage)
        .def_readonly("record_count", &CorpusStats::record_count)
        .def_readonly("empty_yield", &CorpusStats::empty_yield)
        .def_readonly("zero_usage", &CorpusStats::zero_usage);

    m.def(
        "aggregate",
        [](const std::vector<ArticleRecord>& records, const std::optional<PipelineConfig>& config,
           unsigned threads) {
            py::gil_scoped_release release;
            return aggregate(records, config ? *config : PipelineConfig::builtin(), threads);
        },
        py::arg("records"), py::arg("config") = py::none(), py::arg("threads") = 1);
    m.def(
        "top_by_frequency",
        [](const CorpusStats& c, std::size_t k) { return top_by_frequency(c.topics, k); },
        py::arg("stats"), py::arg("k"));
    m.def(
        "top_by_usage", [](const CorpusStats& c, std::size_t k) { return top_by_usage(c.topics, k); },
        py::arg("stats"), py::arg("k"));
    m.def(
        "quadrants", [](const CorpusStats& c, std::size_t k) { return quadrant_dict(quadrants(c.topics, k)); },
        py::arg("stats"), py::arg("k"));
    m.def(
        "quadrants_from_rankings",
        [](const std::vector<std::string>& by_frequency, const std::vector<std::string>& by_usage,
           std::size_t k) {
            return quadrant_dict(quadrants_from_rankings(to_topics(by_frequency), to_topics(by_usage), k));
        },
        py::arg("by_frequency"), py::arg("by_usage"), py::arg("k"));
    m.def("format_percent", &format_percent, py::arg("ratio"));

    // Snapshots and trends
    py::class_<Snapshot>(m, "Snapshot")
        .def(py::init([](const std::string& date, std::map<std::string, std::uint64_t> usage) {
                 Snapshot s;
                 s.date = parse_date(date);
                 s.usage = std::move(usage);
                 return s;
             }),
             py::arg("date"), py::arg("usage"))
        .def_property_readonly("date", [](const Snapshot& s) { return format_date(s.date); })
        .def_readonly("usage", &Snapshot::usage);

    m.def(
        "snapshot_from_records",
        [](const std::vector<ArticleRecord>& records, const std::string& date) {
            return snapshot_from_records(records, parse_date(date));
        },
        py::arg("records"), py::arg("date"));

    py::class_<PeriodDelta>(m, "PeriodDelta")
        .def_property_readonly("start_date", [](const PeriodDelta& d) { return format_date(d.start_date); })
        .def_property_readonly("end_date", [](const PeriodDelta& d) { return format_date(d.end_date); })
        .def_readonly("per_article", &PeriodDelta::per_article)
        .def_readonly("valid", &PeriodDelta::valid)
        .def_readonly("invalid_reason", &PeriodDelta::invalid_reason)
        .def("total", &PeriodDelta::total);

    m.def("period_delta", &period_delta, py::arg("earlier"), py::arg("later"));

    m.def(
        "classify_trend",
        [](const std::vector<double>& values) { return std::string(to_string(classify_trend(values))); },
        py::arg("values"));

    py::class_<SeriesPoint>(m, "SeriesPoint")
        .def_property_readonly("period_start", [](const SeriesPoint& p) { return format_date(p.period_start); })
        .def_property_readonly("period_end", [](const SeriesPoint& p) { return format_date(p.period_end); })
        .def_readonly("ratio2", &SeriesPoint::ratio2)
        .def_readonly("topic_usage", &SeriesPoint::topic_usage)
        .def_readonly("total_usage", &SeriesPoint::total_usage)
        .def_readonly("zero_denominator", &SeriesPoint::zero_denominator)
        .def_readonly("invalid_included", &SeriesPoint::invalid_included);

    py::class_<TopicSeries>(m, "TopicSeries")
        .def_property_readonly("topic", [](const TopicSeries& s) { return s.topic.canonical; })
        .def_readonly("points", &TopicSeries::points)
        .def_property_readonly("classification",
                               [](const TopicSeries& s) { return std::string(to_string(s.classification)); })
        .def_readonly("unknown_topic", &TopicSeries::unknown_topic)
        .def_readonly("excluded_periods", &TopicSeries::excluded_periods)
        .def_readonly("invalid_periods", &TopicSeries::invalid_periods)
        .def("values", &TopicSeries::values);

    m.def(
        "ratio2_series",
        [](const std::vector<Snapshot>& snapshots, const std::vector<ArticleRecord>& records,
           const std::string& topic, const std::vector<std::string>& exclude, bool include_invalid,
           const std::optional<PipelineConfig>& config) {
            if (snapshots.size() < 2) throw InsufficientSnapshots();
            const auto deltas = consecutive_deltas(snapshots);
            const auto index = index_topics(records, config ? *config : PipelineConfig::builtin());
            SeriesOptions options;
            options.include_invalid = include_invalid;
            return ratio2_series(deltas, index, Topic{topic}, ExcludedPeriods::parse(exclude), options);
        },
        py::arg("snapshots"), py::arg("records"), py::arg("topic"),
        py::arg("exclude") = std::vector<std::string>{}, py::arg("include_invalid") = false,
        py::arg("config") = py::none());
}
