#include <doctest.h>

#include <random>

#include "hottopics/error.hpp"
#include "hottopics/keywords.hpp"
#include "hottopics/porter_stemmer.hpp"
#include "oracle/random_corpus.hpp"

using namespace hottopics;

namespace {

ArticleRecord record(std::vector<std::string> de, std::vector<std::string> id = {},
                     std::string title = {}) {
    ArticleRecord r;
    r.accession_id = "WOS:T";
    r.author_keywords = std::move(de);
    r.keywords_plus = std::move(id);
    r.title = std::move(title);
    return r;
}

std::set<Topic> topic_set(std::initializer_list<const char*> names) {
    std::set<Topic> out;
    for (const char* n : names) out.insert(Topic{n});
    return out;
}

}  // namespace

TEST_CASE("author keywords win over keywords plus and title") {
    const auto sw = StopwordList::builtin();
    auto r = record({"fMRI", "Working memory"}, {"IGNORED"}, "Also ignored");
    CHECK(keyword_source(r) == KeywordSource::AuthorKeywords);
    CHECK(extract_raw_keywords(r, sw) == std::vector<std::string>{"fMRI", "Working memory"});
}

TEST_CASE("keywords plus are used when there are no author keywords") {
    const auto sw = StopwordList::builtin();
    auto r = record({}, {"PREFRONTAL CORTEX"}, "Ignored title");
    CHECK(keyword_source(r) == KeywordSource::KeywordsPlus);
    CHECK(extract_raw_keywords(r, sw) == std::vector<std::string>{"PREFRONTAL CORTEX"});
}

TEST_CASE("title words without stopwords are the last resort") {
    // Tokens: Dopamine | and | the | aging | brain; "and" and "the" are stopwords.
    const StopwordList sw(std::set<std::string>{"and", "the"});
    auto r = record({}, {}, "Dopamine and the aging brain");
    CHECK(keyword_source(r) == KeywordSource::Title);
    CHECK(extract_raw_keywords(r, sw) == std::vector<std::string>{"Dopamine", "aging", "brain"});
    CHECK(extract_raw_keywords(r, StopwordList::builtin()) ==
          std::vector<std::string>{"Dopamine", "aging", "brain"});
}

TEST_CASE("a title of only stopwords yields nothing") {
    auto r = record({}, {}, "The the of and");
    CHECK_THROWS_AS(extract_raw_keywords(r, StopwordList::builtin()), EmptyYield);
    CHECK_THROWS_AS(topics_of(r, PipelineConfig::builtin()), EmptyYield);
    CHECK_THROWS_AS(topics_of(record({}, {}, "1999 -- (2015)"), PipelineConfig::builtin()),
                    EmptyYield);
}

TEST_CASE("stopwords do not apply to author keywords") {
    auto r = record({"the"});
    CHECK(topics_of(r, PipelineConfig::builtin()) == topic_set({"the"}));
}

TEST_CASE("tokenizer") {
    CHECK(tokenize("Event-related potentials (ERPs) in 2015: a review") ==
          std::vector<std::string>{"Event-related", "potentials", "ERPs", "in", "a", "review"});
    CHECK(tokenize("--leading and trailing-- -") == std::vector<std::string>{"leading", "and", "trailing"});
    CHECK(tokenize("Parkinson's disease") == std::vector<std::string>{"Parkinsons", "disease"});
    CHECK(tokenize("Parkinson\xE2\x80\x99s") == std::vector<std::string>{"Parkinsons"});
    CHECK(tokenize("\xE2\x80\x9CHot\xE2\x80\x9D topics") == std::vector<std::string>{"Hot", "topics"});
    CHECK(tokenize("caf\xC3\xA9 P300 5-HT 1998") ==
          std::vector<std::string>{"caf\xC3\xA9", "P300", "5-HT"});
    CHECK(tokenize("").empty());
}

TEST_CASE("stem_phrase stems word by word and hyphen segment by segment") {
    CHECK(stem_phrase("Prefrontal Cortex") == "prefront cortex");
    CHECK(stem_phrase("event-related potential") == "event-relat potenti");
    CHECK(stem_phrase("fmri") == "fmri");
    CHECK(stem_phrase("  Cognitive   control ") == "cognit control");
    CHECK(stem_phrase("functional magnetic resonance imaging") == "function magnet reson imag");
    CHECK(stem_phrase("Working memory") == "work memori");
    CHECK(stem_phrase("brain-computer interface") == "brain-comput interfac");
}

TEST_CASE("normalize_topic applies the built-in merges") {
    const auto syn = SynonymTable::builtin();
    CHECK(normalize_topic("function magnet reson imag", syn).canonical == "fmri");
    CHECK(normalize_topic("function mri", syn).canonical == "fmri");
    CHECK(normalize_topic("event-relat potenti", syn).canonical == "erp");
    CHECK(normalize_topic("amygdala", syn).canonical == "amygdala");
}

TEST_CASE("synonymous keywords collapse into one topic") {
    // "fMRI" -> "fmri"; "functional MRI" -> "function mri" -> "fmri".
    const auto syn = SynonymTable::parse("function mri => fmri\n");
    auto topics = topics_of(record({"fMRI", "functional MRI"}), StopwordList::builtin(), syn);
    CHECK(topics == topic_set({"fmri"}));
}

TEST_CASE("case and whitespace variants deduplicate") {
    auto topics = topics_of(record({"EEG", "eeg "}), PipelineConfig::builtin());
    CHECK(topics == topic_set({"eeg"}));
}

TEST_CASE("keywords plus and title words go through the same stemming") {
    const auto cfg = PipelineConfig::builtin();
    CHECK(topics_of(record({}, {"PREFRONTAL CORTEX", "Event-Related Potentials"}), cfg) ==
          topic_set({"prefront cortex", "erp"}));
    CHECK(topics_of(record({}, {}, "Dopamine and the aging brain"), cfg) ==
          topic_set({"dopamin", "ag", "brain"}));
}

TEST_CASE("title phrase dictionary keeps listed phrases together") {
    auto cfg = PipelineConfig::builtin();
    cfg.title_phrases = PhraseDictionary::parse("# phrases\nworking memory\nprefrontal cortex\n");
    auto r = record({}, {}, "Working memory and the prefrontal cortex in rats");
    CHECK(extract_raw_keywords(r, cfg.stopwords, cfg.title_phrases) ==
          std::vector<std::string>{"Working memory", "prefrontal cortex", "rats"});
    CHECK(topics_of(r, cfg) == topic_set({"work memori", "prefront cortex", "rat"}));
}

TEST_CASE("synonym table file format") {
    auto t = SynonymTable::parse(
        "# comment\n"
        "\n"
        "function   mri =>  fmri   # trailing comment\n"
        "fmri => fmri\n",
        "syn.txt");
    CHECK(t.mapping().size() == 2);
    CHECK(t.resolve("function mri") == "fmri");
    CHECK(t.resolve("fmri") == "fmri");
    CHECK(t.source_path() == "syn.txt");
}

TEST_CASE("synonym chains and cycles are rejected") {
    CHECK_THROWS_AS(SynonymTable::parse("a => b\nb => c\n"), ConfigError);
    CHECK_THROWS_AS(SynonymTable::parse("a => b\nb => a\n"), ConfigError);
    CHECK_THROWS_AS(SynonymTable::parse("a => b\na => c\n"), ConfigError);
    CHECK_THROWS_AS(SynonymTable::parse("A => b\n"), ConfigError);
    CHECK_THROWS_AS(SynonymTable::parse("a b\n"), ConfigError);
    CHECK_THROWS_AS(SynonymTable::parse(" => b\n"), ConfigError);
    CHECK_THROWS_AS(SynonymTable::from_map({{"x", "Y"}}), ConfigError);
    CHECK_NOTHROW(SynonymTable::parse("a => c\nb => c\nc => c\n"));
}

TEST_CASE("synonym errors carry the line") {
    try {
        SynonymTable::parse("a => b\n\nbad line\n", "s.txt");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(e.source() == "s.txt");
    }
}

TEST_CASE("stopword file format") {
    auto sw = StopwordList::parse("# list\nthe\n  of  \n\nand # conj\n");
    CHECK(sw.size() == 3);
    CHECK(sw.contains("of"));
    CHECK_FALSE(sw.contains("Of"));
    CHECK_THROWS_AS(StopwordList::parse("The\n"), ConfigError);
    CHECK_THROWS_AS(StopwordList::parse("two words\n"), ConfigError);
}

TEST_CASE("built-in stopword list") {
    const auto sw = StopwordList::builtin();
    CHECK(sw.size() >= 160);
    CHECK(sw.size() <= 180);
    for (const char* w : {"the", "and", "of", "a", "in", "with"}) CHECK(sw.contains(w));
    for (const char* w : {"brain", "memory", "aging", "dopamine", "rats"}) CHECK_FALSE(sw.contains(w));
}

TEST_CASE("property: normalization is idempotent and topics are well formed") {
    const auto cfg = PipelineConfig::builtin();
    std::mt19937_64 rng(7);
    const std::vector<std::string> words = {"Functional", "MRI", "event-related", "potentials",
                                            "Magnetic",   "resonance", "imaging", "Working",
                                            "memory",     "the",  "of", "Cortex", "rats"};
    for (int iter = 0; iter < 500; ++iter) {
        std::vector<std::string> kws;
        const auto n = gen::uniform(rng, 1, 4);
        for (std::size_t i = 0; i < n; ++i) {
            std::string phrase;
            const auto len = gen::uniform(rng, 1, 4);
            for (std::size_t j = 0; j < len; ++j)
                phrase += (j ? "  " : " ") + words[gen::uniform(rng, 0, words.size() - 1)];
            kws.push_back(phrase);
        }
        const auto which = gen::uniform(rng, 0, 2);
        auto r = which == 0 ? record(kws) : which == 1 ? record({}, kws) : record({}, {}, kws[0]);
        std::set<Topic> topics;
        try {
            topics = topics_of(r, cfg);
        } catch (const EmptyYield&) {
            CHECK(which == 2);
            continue;
        }
        CHECK(topics == topics_of(r, cfg));
        CHECK(topics.size() <= extract_raw_keywords(r, cfg.stopwords).size());
        for (const auto& t : topics) {
            CHECK(normalize_topic(t.canonical, cfg.synonyms) == t);
            CHECK_FALSE(t.canonical.empty());
            CHECK(t.canonical.find("  ") == std::string::npos);
            CHECK(t.canonical.front() != ' ');
            CHECK(t.canonical.back() != ' ');
            for (char c : t.canonical) CHECK_FALSE((c >= 'A' && c <= 'Z'));
        }
    }
}

TEST_CASE("generator topic names are stemmer fixed points") {
    for (const auto& name : gen::kTopicNames) CHECK(stem_phrase(name) == name);
}
