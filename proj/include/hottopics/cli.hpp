#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hottopics/keywords.hpp"
#include "hottopics/report.hpp"

namespace hottopics::cli {

/// Settings shared by all subcommands. Read from a `key = value` config
/// file and then overridden by command-line flags.
///
///   store = "runs/neuro"
///   stopwords = "data/stopwords.txt"
///   synonyms = "data/synonyms.txt"
///   phrases = "data/phrases.txt"
///   corpus = ["export1.txt", "export2.txt"]
///   exclude = ["2016-01-18..2016-01-25"]
///   top_k = 20
///   format = "csv"
struct RunConfig {
    std::vector<std::string> corpus_paths;
    std::optional<std::string> stopwords_path;
    std::optional<std::string> synonyms_path;
    std::optional<std::string> phrases_path;
    std::optional<std::string> store_dir;
    std::vector<std::string> excluded_periods;
    std::size_t top_k = 20;
    OutputFormat format = OutputFormat::Csv;

    /// Throws ConfigError on unknown keys or malformed values.
    static RunConfig parse(std::string_view text, const std::string& source = {});
    static RunConfig load(const std::string& path);

    /// Checks top_k >= 1, that referenced files exist and that excluded
    /// periods parse. Throws ConfigError.
    void validate() const;

    /// Built-in lists unless a path is configured.
    PipelineConfig pipeline() const;
};

/// Environment variable consulted when neither --store nor the config file
/// name a store directory.
inline constexpr const char* kStoreEnvVar = "HOTTOPICS_STORE";

/// Runs the command line. Returns the process exit code: 0 on success,
/// 1 on a runtime error, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hottopics::cli
