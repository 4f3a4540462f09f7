#pragma once

// Keyword extraction: record -> raw phrases -> stemmed phrases -> topics.
//
// Raw phrases come from exactly one source per record: author keywords
// when present, otherwise keywords plus, otherwise the title split into
// words with stopwords removed.

#include <compare>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hottopics/wos_export.hpp"

namespace hottopics {

/// A canonical keyword phrase: lowercase, stemmed word by word, synonyms merged.
struct Topic {
    std::string canonical;

    auto operator<=>(const Topic&) const = default;
};

class StopwordList {
public:
    StopwordList() = default;
    explicit StopwordList(std::set<std::string> words);

    /// One word per line, `#` starts a comment. Entries must be single
    /// lowercase tokens; anything else raises ConfigError.
    static StopwordList parse(std::string_view text, const std::string& source = {});
    static StopwordList load(const std::string& path);
    /// The versioned English list shipped with the library.
    static StopwordList builtin();

    bool contains(std::string_view lowercase_word) const;
    const std::set<std::string, std::less<>>& words() const { return words_; }
    std::size_t size() const { return words_.size(); }

private:
    std::set<std::string, std::less<>> words_;
};

/// Maps stemmed variant phrases onto a canonical stemmed phrase.
/// Targets are never themselves remapped, so a lookup is always final.
class SynonymTable {
public:
    SynonymTable() = default;

    /// Throws ConfigError when the mapping contains a chain or a cycle,
    /// or when an entry is not lowercase single-spaced text.
    static SynonymTable from_map(std::map<std::string, std::string> mapping,
                                 std::string source_path = {});

    /// `variant => canonical` per line, `#` comments.
    static SynonymTable parse(std::string_view text, const std::string& source = {});
    static SynonymTable load(const std::string& path);
    /// Default merges: the fmri and erp groups.
    static SynonymTable builtin();

    /// The canonical form of `phrase`, or `phrase` itself when unmapped.
    std::string_view resolve(std::string_view phrase) const;

    const std::map<std::string, std::string, std::less<>>& mapping() const { return mapping_; }
    const std::string& source_path() const { return source_path_; }

private:
    std::map<std::string, std::string, std::less<>> mapping_;
    std::string source_path_;
};

/// Multi-word phrases recognised in titles before stopword removal.
/// Empty by default, in which case titles yield single words only.
class PhraseDictionary {
public:
    PhraseDictionary() = default;

    /// One phrase per line, `#` comments. Matching is case-insensitive.
    static PhraseDictionary parse(std::string_view text, const std::string& source = {});
    static PhraseDictionary load(const std::string& path);

    void add(std::string_view phrase);
    bool empty() const { return phrases_.empty(); }
    std::size_t max_length() const { return max_length_; }
    bool contains(const std::vector<std::string>& lowercase_tokens) const;

private:
    std::set<std::vector<std::string>> phrases_;
    std::size_t max_length_ = 0;
};

struct PipelineConfig {
    StopwordList stopwords;
    SynonymTable synonyms;
    PhraseDictionary title_phrases;

    /// Built-in stopwords and synonyms, no title phrases.
    static PipelineConfig builtin();
};

enum class KeywordSource { AuthorKeywords, KeywordsPlus, Title };

/// The single source the record's keywords are taken from.
KeywordSource keyword_source(const ArticleRecord& record);

/// Splits free text into word tokens. Letters, digits and hyphens form
/// tokens; apostrophes are dropped so "Parkinson's" stays one word.
/// Leading/trailing hyphens are stripped and all-digit tokens discarded.
std::vector<std::string> tokenize(std::string_view text);

/// Raw keyword phrases of a record, before stemming. Title words keep their
/// original case. Throws EmptyYield when nothing usable remains.
std::vector<std::string> extract_raw_keywords(const ArticleRecord& record,
                                              const StopwordList& stopwords,
                                              const PhraseDictionary& phrases = {});

/// Lowercases, stems every word (each segment of hyphenated words
/// separately) and joins the words with single spaces.
std::string stem_phrase(std::string_view phrase);

Topic normalize_topic(std::string_view stemmed_phrase, const SynonymTable& synonyms);

/// The distinct topics of a record. Propagates EmptyYield.
std::set<Topic> topics_of(const ArticleRecord& record, const PipelineConfig& config);
std::set<Topic> topics_of(const ArticleRecord& record, const StopwordList& stopwords,
                          const SynonymTable& synonyms);

}  // namespace hottopics
