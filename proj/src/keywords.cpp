#include "hottopics/keywords.hpp"

#include <algorithm>
#include <utility>

#include "builtin_lists.hpp"
#include "hottopics/error.hpp"
#include "hottopics/porter_stemmer.hpp"
#include "text_util.hpp"

namespace hottopics {

namespace {

bool has_upper_ascii(std::string_view s) {
    for (char c : s)
        if (c >= 'A' && c <= 'Z') return true;
    return false;
}

std::string_view strip_comment(std::string_view line) {
    if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
    return detail::trim(line);
}

std::string join_single_spaced(std::string_view text) {
    std::string out;
    for (auto word : detail::split_ws(text)) {
        if (!out.empty()) out += ' ';
        out += word;
    }
    return out;
}

// Decodes one UTF-8 code point starting at s[i] (input already validated
// or treated leniently: a stray byte decodes as itself).
char32_t decode(std::string_view s, std::size_t& i) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
    if (i + len > s.size()) len = 1;
    char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
    for (std::size_t k = 1; k < len; ++k)
        cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    i += len;
    return cp;
}

enum class CharClass { Word, Hyphen, Apostrophe, Separator };

CharClass classify(char32_t cp) {
    if (cp == '-') return CharClass::Hyphen;
    if (cp == '\'' || cp == 0x2019 || cp == 0x2018) return CharClass::Apostrophe;
    if (cp < 0x80) {
        const bool alnum = (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') ||
                           (cp >= '0' && cp <= '9');
        return alnum ? CharClass::Word : CharClass::Separator;
    }
    // Latin-1 punctuation and symbols, multiplication/division signs,
    // general punctuation (dashes, quotes, ellipsis, spaces).
    if ((cp >= 0x80 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7) return CharClass::Separator;
    if (cp >= 0x2000 && cp <= 0x206F) return CharClass::Separator;
    if (cp == 0x3000 || cp == 0xFEFF) return CharClass::Separator;
    return CharClass::Word;
}

bool all_digits(std::string_view s) {
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

std::string stem_token(std::string_view token) {
    std::string out;
    bool first = true;
    for (auto segment : detail::split(token, '-')) {
        if (!first) out += '-';
        first = false;
        if (!segment.empty()) out += stem_word(segment);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// StopwordList

StopwordList::StopwordList(std::set<std::string> words) {
    for (const auto& w : words) {
        if (w.empty() || has_upper_ascii(w) || detail::split_ws(w).size() != 1)
            throw ConfigError("stopword must be a single lowercase word: '" + w + "'", 0);
        words_.insert(w);
    }
}

StopwordList StopwordList::parse(std::string_view text, const std::string& source) {
    StopwordList list;
    detail::LineReader reader(detail::strip_bom(text));
    std::string_view line;
    while (reader.next(line)) {
        auto word = strip_comment(line);
        if (word.empty()) continue;
        if (has_upper_ascii(word) || detail::split_ws(word).size() != 1)
            throw ConfigError("stopword must be a single lowercase word: '" + std::string(word) +
                                  "'",
                              reader.line_no(), source);
        list.words_.emplace(word);
    }
    return list;
}

StopwordList StopwordList::load(const std::string& path) {
    return parse(detail::read_file(path), path);
}

StopwordList StopwordList::builtin() {
    return parse(detail::kBuiltinStopwords, "<builtin stopwords>");
}

bool StopwordList::contains(std::string_view lowercase_word) const {
    return words_.find(lowercase_word) != words_.end();
}

// ---------------------------------------------------------------------------
// SynonymTable

SynonymTable SynonymTable::from_map(std::map<std::string, std::string> mapping,
                                    std::string source_path) {
    SynonymTable table;
    table.source_path_ = std::move(source_path);
    for (const auto& [variant, canonical] : mapping) {
        for (const std::string* side : {&variant, &canonical}) {
            if (side->empty() || has_upper_ascii(*side) || join_single_spaced(*side) != *side)
                throw ConfigError("synonym entry must be lowercase single-spaced text: '" +
                                      *side + "'",
                                  0, table.source_path_);
        }
    }
    for (const auto& [variant, canonical] : mapping) {
        if (variant == canonical) continue;
        auto it = mapping.find(canonical);
        if (it != mapping.end() && it->second != canonical)
            throw ConfigError("synonym chain: '" + variant + "' => '" + canonical + "' => '" +
                                  it->second + "'",
                              0, table.source_path_);
    }
    table.mapping_.insert(std::make_move_iterator(mapping.begin()),
                          std::make_move_iterator(mapping.end()));
    return table;
}

SynonymTable SynonymTable::parse(std::string_view text, const std::string& source) {
    std::map<std::string, std::string> mapping;
    std::map<std::string, std::size_t> defined_at;
    detail::LineReader reader(detail::strip_bom(text));
    std::string_view line;
    while (reader.next(line)) {
        const auto ln = reader.line_no();
        auto rule = strip_comment(line);
        if (rule.empty()) continue;
        auto arrow = rule.find("=>");
        if (arrow == std::string_view::npos)
            throw ConfigError("expected 'variant => canonical'", ln, source);
        auto variant = join_single_spaced(rule.substr(0, arrow));
        auto canonical = join_single_spaced(rule.substr(arrow + 2));
        if (variant.empty() || canonical.empty())
            throw ConfigError("empty side in synonym rule", ln, source);
        if (has_upper_ascii(variant) || has_upper_ascii(canonical))
            throw ConfigError("synonym rules must be lowercase", ln, source);
        if (auto it = mapping.find(variant); it != mapping.end() && it->second != canonical)
            throw ConfigError("'" + variant + "' already mapped to '" + it->second +
                                  "' on line " + std::to_string(defined_at[variant]),
                              ln, source);
        mapping[variant] = canonical;
        defined_at.emplace(variant, ln);
    }
    return from_map(std::move(mapping), source);
}

SynonymTable SynonymTable::load(const std::string& path) {
    return parse(detail::read_file(path), path);
}

SynonymTable SynonymTable::builtin() {
    return parse(detail::kBuiltinSynonyms, "<builtin synonyms>");
}

std::string_view SynonymTable::resolve(std::string_view phrase) const {
    auto it = mapping_.find(phrase);
    return it == mapping_.end() ? phrase : std::string_view(it->second);
}

// ---------------------------------------------------------------------------
// PhraseDictionary

PhraseDictionary PhraseDictionary::parse(std::string_view text, const std::string& source) {
    PhraseDictionary dict;
    detail::LineReader reader(detail::strip_bom(text));
    std::string_view line;
    while (reader.next(line)) {
        auto phrase = strip_comment(line);
        if (phrase.empty()) continue;
        if (tokenize(phrase).empty())
            throw ConfigError("phrase has no words", reader.line_no(), source);
        dict.add(phrase);
    }
    return dict;
}

PhraseDictionary PhraseDictionary::load(const std::string& path) {
    return parse(detail::read_file(path), path);
}

void PhraseDictionary::add(std::string_view phrase) {
    std::vector<std::string> tokens;
    for (auto& t : tokenize(phrase)) tokens.push_back(detail::to_lower_ascii(t));
    if (tokens.empty()) return;
    max_length_ = std::max(max_length_, tokens.size());
    phrases_.insert(std::move(tokens));
}

bool PhraseDictionary::contains(const std::vector<std::string>& lowercase_tokens) const {
    return phrases_.count(lowercase_tokens) != 0;
}

PipelineConfig PipelineConfig::builtin() {
    return {StopwordList::builtin(), SynonymTable::builtin(), PhraseDictionary{}};
}

// ---------------------------------------------------------------------------
// Extraction

KeywordSource keyword_source(const ArticleRecord& record) {
    if (!record.author_keywords.empty()) return KeywordSource::AuthorKeywords;
    if (!record.keywords_plus.empty()) return KeywordSource::KeywordsPlus;
    return KeywordSource::Title;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        std::string_view tok = current;
        while (!tok.empty() && tok.front() == '-') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == '-') tok.remove_suffix(1);
        if (!tok.empty() && !all_digits(tok)) tokens.emplace_back(tok);
        current.clear();
    };
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        switch (classify(decode(text, i))) {
            case CharClass::Word:
            case CharClass::Hyphen:
                current.append(text.substr(start, i - start));
                break;
            case CharClass::Apostrophe:
                break;
            case CharClass::Separator:
                flush();
                break;
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> extract_raw_keywords(const ArticleRecord& record,
                                              const StopwordList& stopwords,
                                              const PhraseDictionary& phrases) {
    switch (keyword_source(record)) {
        case KeywordSource::AuthorKeywords:
            return record.author_keywords;
        case KeywordSource::KeywordsPlus:
            return record.keywords_plus;
        case KeywordSource::Title:
            break;
    }

    const auto tokens = tokenize(record.title);
    std::vector<std::string> lower;
    lower.reserve(tokens.size());
    for (const auto& t : tokens) lower.push_back(detail::to_lower_ascii(t));

    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < tokens.size()) {
        // Longest dictionary phrase starting here, if any.
        std::size_t matched = 0;
        for (std::size_t len = std::min(phrases.max_length(), tokens.size() - i); len >= 2; --len) {
            std::vector<std::string> window(lower.begin() + static_cast<std::ptrdiff_t>(i),
                                            lower.begin() + static_cast<std::ptrdiff_t>(i + len));
            if (phrases.contains(window)) {
                matched = len;
                break;
            }
        }
        if (matched) {
            std::string phrase;
            for (std::size_t k = i; k < i + matched; ++k) {
                if (!phrase.empty()) phrase += ' ';
                phrase += tokens[k];
            }
            out.push_back(std::move(phrase));
            i += matched;
            continue;
        }
        if (!stopwords.contains(lower[i])) out.push_back(tokens[i]);
        ++i;
    }
    if (out.empty()) throw EmptyYield(record.accession_id);
    return out;
}

std::string stem_phrase(std::string_view phrase) {
    const std::string lower = detail::to_lower_ascii(phrase);
    std::string out;
    for (auto token : detail::split_ws(lower)) {
        if (!out.empty()) out += ' ';
        out += stem_token(token);
    }
    return out;
}

Topic normalize_topic(std::string_view stemmed_phrase, const SynonymTable& synonyms) {
    return Topic{std::string(synonyms.resolve(stemmed_phrase))};
}

std::set<Topic> topics_of(const ArticleRecord& record, const PipelineConfig& config) {
    std::set<Topic> topics;
    for (const auto& raw : extract_raw_keywords(record, config.stopwords, config.title_phrases)) {
        auto stemmed = stem_phrase(raw);
        if (stemmed.empty()) continue;
        topics.insert(normalize_topic(stemmed, config.synonyms));
    }
    if (topics.empty()) throw EmptyYield(record.accession_id);
    return topics;
}

std::set<Topic> topics_of(const ArticleRecord& record, const StopwordList& stopwords,
                          const SynonymTable& synonyms) {
    return topics_of(record, PipelineConfig{stopwords, synonyms, PhraseDictionary{}});
}

}  // namespace hottopics
