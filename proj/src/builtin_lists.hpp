#pragma once

#include <string_view>

namespace hottopics::detail {

// Contents of data/stopwords.txt and data/synonyms.txt, embedded at build time.
extern const std::string_view kBuiltinStopwords;
extern const std::string_view kBuiltinSynonyms;

}  // namespace hottopics::detail
