#pragma once

#include <string>
#include <string_view>

namespace hottopics {

/// Porter (1980) suffix-stripping stemmer for lowercase English words.
///
/// Follows the reference ANSI C implementation, including its two
/// departures from the published rules ("bli" -> "ble" in place of
/// "abli" -> "able", and the extra "logi" -> "log" rule), so that the
/// published test vocabulary is reproduced exactly.
///
/// Words of one or two characters are returned unchanged. The function is
/// total: characters other than a-z are treated as consonants.
std::string stem_word(std::string_view word);

}  // namespace hottopics
