#pragma once

// Reader and writer for the field-tagged plain-text export format.
//
// A file looks like
//
//   FN Clarivate Analytics Web of Science
//   VR 1.0
//   PT J
//   TI Brain mapping of
//      working memory
//   DE fMRI; brain
//   U2 12
//   UT WOS:000A
//   ER
//
//   EF
//
// Every line starts with a two character tag and a space. Lines indented by
// exactly three spaces continue the value of the previous tag. `ER` closes a
// record and `EF` closes the file.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hottopics {

struct ArticleRecord {
    std::string accession_id;                   // UT
    std::string title;                          // TI
    std::vector<std::string> author_keywords;   // DE
    std::vector<std::string> keywords_plus;     // ID
    std::optional<int> pub_year;                // PY
    std::uint64_t usage_180d = 0;               // U1
    std::uint64_t usage_since_2013 = 0;         // U2
    std::map<std::string, std::string> extra_fields;

    bool operator==(const ArticleRecord&) const = default;
};

/// Parses a complete export. Throws MalformedRecord, DuplicateAccession,
/// BadUsageValue or EncodingError; all of them carry the offending line.
std::vector<ArticleRecord> parse_export(std::string_view text);

/// Reads and parses a file. The file name is prepended to error messages.
std::vector<ArticleRecord> read_export_file(const std::string& path);

std::string write_export(const std::vector<ArticleRecord>& records);

/// True when `tag` is two characters from [A-Z0-9] starting with a letter.
bool is_valid_tag(std::string_view tag);

}  // namespace hottopics
