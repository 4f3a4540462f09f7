#include "hottopics/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "hottopics/error.hpp"
#include "hottopics/snapshot.hpp"
#include "hottopics/usage_model.hpp"
#include "hottopics/wos_export.hpp"
#include "text_util.hpp"

namespace hottopics::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kCorpusFile = "corpus.txt";
constexpr const char* kSnapshotDir = "snapshots";

// ---------------------------------------------------------------------------
// Config file values

struct ConfigValue {
    std::vector<std::string> items;
    bool is_list = false;
};

// Reads one double-quoted string starting at s[pos] == '"'.
std::string read_quoted(std::string_view s, std::size_t& pos, std::size_t line,
                        const std::string& source) {
    std::string out;
    ++pos;
    while (pos < s.size()) {
        char c = s[pos++];
        if (c == '"') return out;
        if (c == '\\') {
            if (pos >= s.size()) break;
            char e = s[pos++];
            switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: throw ConfigError(std::string("unknown escape \\") + e, line, source);
            }
            continue;
        }
        out += c;
    }
    throw ConfigError("unterminated string", line, source);
}

ConfigValue parse_value(std::string_view raw, std::size_t line, const std::string& source) {
    ConfigValue v;
    raw = detail::trim(raw);
    if (raw.empty()) throw ConfigError("missing value", line, source);

    if (raw.front() == '[') {
        v.is_list = true;
        if (raw.back() != ']') throw ConfigError("unterminated list", line, source);
        std::string_view body = raw.substr(1, raw.size() - 2);
        std::size_t pos = 0;
        while (true) {
            while (pos < body.size() && detail::is_space(body[pos])) ++pos;
            if (pos >= body.size()) break;
            if (body[pos] != '"') throw ConfigError("list items must be quoted strings", line, source);
            v.items.push_back(read_quoted(body, pos, line, source));
            while (pos < body.size() && detail::is_space(body[pos])) ++pos;
            if (pos >= body.size()) break;
            if (body[pos] != ',') throw ConfigError("expected ',' between list items", line, source);
            ++pos;
        }
        return v;
    }
    if (raw.front() == '"') {
        std::size_t pos = 0;
        v.items.push_back(read_quoted(raw, pos, line, source));
        if (!detail::trim(raw.substr(pos)).empty())
            throw ConfigError("unexpected text after string", line, source);
        return v;
    }
    v.items.emplace_back(raw);
    return v;
}

// Drops a trailing comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '\\' && quoted) {
            ++i;
        } else if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return line.substr(0, i);
        }
    }
    return line;
}

std::string single(const ConfigValue& v, const std::string& key, std::size_t line,
                   const std::string& source) {
    if (v.is_list || v.items.size() != 1)
        throw ConfigError("'" + key + "' takes a single value", line, source);
    return v.items.front();
}

// ---------------------------------------------------------------------------
// Errors

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const MalformedRecord*>(&e)) return "MalformedRecord";
    if (dynamic_cast<const DuplicateAccession*>(&e)) return "DuplicateAccession";
    if (dynamic_cast<const BadUsageValue*>(&e)) return "BadUsageValue";
    if (dynamic_cast<const EncodingError*>(&e)) return "EncodingError";
    if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
    if (dynamic_cast<const EmptyCorpus*>(&e)) return "EmptyCorpus";
    if (dynamic_cast<const DuplicateDate*>(&e)) return "DuplicateDate";
    if (dynamic_cast<const UnwritableStore*>(&e)) return "UnwritableStore";
    if (dynamic_cast<const InsufficientSnapshots*>(&e)) return "InsufficientSnapshots";
    if (dynamic_cast<const BadSnapshotFile*>(&e)) return "BadSnapshotFile";
    if (dynamic_cast<const BadOrder*>(&e)) return "BadOrder";
    return "Error";
}

// ---------------------------------------------------------------------------
// Store helpers

struct Context {
    RunConfig config;
    std::ostream& out;
    std::ostream& err;
};

fs::path store_dir(const RunConfig& config) {
    if (config.store_dir) return *config.store_dir;
    if (const char* env = std::getenv(kStoreEnvVar); env && *env) return env;
    throw Error(std::string("no store directory: pass --store, set 'store' in the config file, or set ") +
                kStoreEnvVar);
}

unsigned worker_count() {
    return std::clamp(std::thread::hardware_concurrency(), 1u, 8u);
}

std::vector<ArticleRecord> load_corpus(const fs::path& store) {
    const auto path = store / kCorpusFile;
    if (!fs::exists(path)) throw EmptyCorpus();
    auto records = read_export_file(path.string());
    if (records.empty()) throw EmptyCorpus();
    return records;
}

void write_file_atomically(const fs::path& path, const std::string& content) {
    const auto tmp = path.parent_path() / ("." + path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw UnwritableStore("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw UnwritableStore("cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw UnwritableStore("cannot replace " + path.string());
}

// Resolves a topic typed by the user: as given when known, otherwise its
// stemmed and synonym-normalized form.
Topic resolve_topic(const std::string& text, const TopicIndex& index,
                    const PipelineConfig& pipeline) {
    Topic as_given{text};
    if (index.knows(as_given)) return as_given;
    auto stemmed = stem_phrase(text);
    if (stemmed.empty()) return as_given;
    Topic normalized = normalize_topic(stemmed, pipeline.synonyms);
    return index.knows(normalized) ? normalized : as_given;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_ingest(Context& ctx, const std::vector<std::string>& files, const std::string& date_text) {
    const Date date = parse_date(date_text);
    const auto store = store_dir(ctx.config);

    std::map<std::string, ArticleRecord> merged;
    std::size_t parsed = 0;
    std::size_t duplicates = 0;
    for (const auto& file : files) {
        for (auto& rec : read_export_file(file)) {
            ++parsed;
            auto id = rec.accession_id;
            auto [it, inserted] = merged.insert_or_assign(std::move(id), std::move(rec));
            if (!inserted) ++duplicates;
        }
    }

    auto snapshots = SnapshotStore::open(store / kSnapshotDir);
    if (snapshots.contains(date))
        throw DuplicateDate("a snapshot for " + format_date(date) + " already exists in " +
                            snapshots.directory().string());

    std::vector<ArticleRecord> ingested;
    ingested.reserve(merged.size());
    for (auto& [id, rec] : merged) ingested.push_back(rec);

    Snapshot snap = snapshot_from_records(ingested, date);
    snapshots.add(snap);

    // Corpus: previously stored records, replaced by this ingest where ids match.
    const auto corpus_path = store / kCorpusFile;
    std::map<std::string, ArticleRecord> corpus;
    if (fs::exists(corpus_path))
        for (auto& rec : read_export_file(corpus_path.string())) {
            auto id = rec.accession_id;
            corpus.emplace(std::move(id), std::move(rec));
        }
    for (auto& rec : ingested) corpus.insert_or_assign(rec.accession_id, rec);
    std::vector<ArticleRecord> all;
    all.reserve(corpus.size());
    for (auto& [id, rec] : corpus) all.push_back(std::move(rec));
    write_file_atomically(corpus_path, write_export(all));

    const auto index = index_topics(ingested, ctx.config.pipeline(), worker_count());
    ctx.out << merged.size() << " records, " << duplicates << " duplicates\n";
    ctx.out << "parsed " << parsed << " records from " << files.size() << " file"
            << (files.size() == 1 ? "" : "s") << "\n";
    ctx.out << "snapshot " << format_date(date) << ": " << snap.usage.size() << " articles\n";
    ctx.out << "corpus: " << all.size() << " records\n";
    ctx.out << "empty yield: " << index.empty_yield.size() << " records\n";
    for (const auto& id : index.empty_yield) ctx.out << "  " << id << "\n";
    return 0;
}

CorpusStats corpus_stats(Context& ctx) {
    const auto records = load_corpus(store_dir(ctx.config));
    auto stats = aggregate(records, ctx.config.pipeline(), worker_count());
    if (stats.zero_usage)
        ctx.err << "warning: ZeroUsageCorpus: total usage is 0, ratios reported as 0\n";
    return stats;
}

int cmd_topics(Context& ctx, const std::string& by) {
    const auto stats = corpus_stats(ctx);
    const auto ranked = by == "freq" ? top_by_frequency(stats.topics, ctx.config.top_k)
                                     : top_by_usage(stats.topics, ctx.config.top_k);
    ctx.out << ranked_table(ranked, ctx.config.format);
    return 0;
}

int cmd_quadrant(Context& ctx) {
    const auto stats = corpus_stats(ctx);
    ctx.out << quadrant_json(quadrants(stats.topics, ctx.config.top_k));
    return 0;
}

int cmd_trends(Context& ctx, const std::vector<std::string>& topics, bool include_invalid) {
    const auto store = store_dir(ctx.config);
    const auto snapshots = SnapshotStore::open(store / kSnapshotDir);
    if (snapshots.size() < 2) throw InsufficientSnapshots();

    const auto records = load_corpus(store);
    const auto pipeline = ctx.config.pipeline();
    const auto index = index_topics(records, pipeline, worker_count());
    const auto deltas = consecutive_deltas(snapshots.load_all());
    const auto excluded = ExcludedPeriods::parse(ctx.config.excluded_periods);

    for (const auto& d : deltas)
        if (!d.valid && !excluded.contains(d.start_date, d.end_date))
            ctx.err << "warning: period " << format_period({d.start_date, d.end_date})
                    << " is invalid (" << d.invalid_reason.value_or("") << ")"
                    << (include_invalid ? ", kept by --include-invalid" : ", skipped") << "\n";

    SeriesOptions options;
    options.include_invalid = include_invalid;
    std::vector<TopicSeries> series;
    for (const auto& text : topics) {
        const Topic topic = resolve_topic(text, index, pipeline);
        auto s = ratio2_series(deltas, index, topic, excluded, options);
        if (s.unknown_topic) {
            ctx.err << "warning: UnknownTopic: '" << text << "' occurs in no record, omitted\n";
            continue;
        }
        series.push_back(std::move(s));
    }
    if (series.empty()) {
        ctx.err << "error: UnknownTopic: none of the requested topics occur in the corpus\n";
        return 1;
    }
    ctx.out << series_table(series, ctx.config.format);
    return 0;
}

int cmd_export(Context& ctx, const std::string& what) {
    const auto records = load_corpus(store_dir(ctx.config));
    if (what == "corpus") {
        ctx.out << write_export(records);
        return 0;
    }
    auto stats = aggregate(records, ctx.config.pipeline(), worker_count());
    if (stats.zero_usage)
        ctx.err << "warning: ZeroUsageCorpus: total usage is 0, ratios reported as 0\n";
    ctx.out << ranked_table(top_by_usage(stats.topics, std::max<std::size_t>(1, stats.topics.size())),
                            ctx.config.format);
    return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// RunConfig

RunConfig RunConfig::parse(std::string_view text, const std::string& source) {
    RunConfig config;
    detail::LineReader reader(detail::strip_bom(text));
    std::string_view line;
    while (reader.next(line)) {
        const auto ln = reader.line_no();
        auto content = detail::trim(strip_comment(line));
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", ln, source);
        const std::string key(detail::trim(content.substr(0, eq)));
        const auto value = parse_value(content.substr(eq + 1), ln, source);

        if (key == "store") {
            config.store_dir = single(value, key, ln, source);
        } else if (key == "stopwords") {
            config.stopwords_path = single(value, key, ln, source);
        } else if (key == "synonyms") {
            config.synonyms_path = single(value, key, ln, source);
        } else if (key == "phrases") {
            config.phrases_path = single(value, key, ln, source);
        } else if (key == "corpus") {
            config.corpus_paths = value.items;
        } else if (key == "exclude") {
            config.excluded_periods = value.items;
        } else if (key == "top_k") {
            const auto s = single(value, key, ln, source);
            std::size_t k = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
            if (ec != std::errc() || ptr != s.data() + s.size() || k == 0)
                throw ConfigError("top_k must be a positive integer", ln, source);
            config.top_k = k;
        } else if (key == "format") {
            const auto s = single(value, key, ln, source);
            if (s != "csv" && s != "json") throw ConfigError("format must be csv or json", ln, source);
            config.format = parse_output_format(s);
        } else {
            throw ConfigError("unknown key '" + key + "'", ln, source);
        }
    }
    return config;
}

RunConfig RunConfig::load(const std::string& path) {
    return parse(detail::read_file(path), path);
}

void RunConfig::validate() const {
    if (top_k < 1) throw ConfigError("top_k must be at least 1", 0);
    auto must_exist = [](const std::string& what, const std::string& path) {
        if (!fs::exists(path)) throw ConfigError(what + " file not found: " + path, 0);
    };
    if (stopwords_path) must_exist("stopword", *stopwords_path);
    if (synonyms_path) must_exist("synonym", *synonyms_path);
    if (phrases_path) must_exist("phrase", *phrases_path);
    for (const auto& p : corpus_paths) must_exist("corpus", p);
    for (const auto& p : excluded_periods) {
        try {
            parse_period(p);
        } catch (const Error& e) {
            throw ConfigError(e.what(), 0);
        }
    }
}

PipelineConfig RunConfig::pipeline() const {
    PipelineConfig p = PipelineConfig::builtin();
    if (stopwords_path) p.stopwords = StopwordList::load(*stopwords_path);
    if (synonyms_path) p.synonyms = SynonymTable::load(*synonyms_path);
    if (phrases_path) p.title_phrases = PhraseDictionary::load(*phrases_path);
    return p;
}

// ---------------------------------------------------------------------------
// Entry point

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Detects and tracks hot topics from bibliographic exports and usage counts",
                 "hottopics"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string store_flag;
    std::string format_flag;
    std::string stopwords_flag;
    std::string synonyms_flag;
    std::string phrases_flag;
    app.add_option("--config", config_path, "Config file (key = value lines)")
        ->check(CLI::ExistingFile);
    app.add_option("--store", store_flag, std::string("Store directory (default: $") + kStoreEnvVar + ")");
    app.add_option("--format", format_flag, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--stopwords", stopwords_flag, "Stopword list file");
    app.add_option("--synonyms", synonyms_flag, "Synonym table file");
    app.add_option("--phrases", phrases_flag, "Title phrase dictionary file");

    std::vector<std::string> ingest_files;
    std::string ingest_date;
    auto* ingest = app.add_subcommand("ingest", "Parse exports and record a usage snapshot");
    ingest->add_option("files", ingest_files, "Field-tagged export files (later files win)")
        ->required();
    ingest->add_option("--date", ingest_date, "Snapshot date, YYYY-MM-DD")->required();

    std::string by = "usage";
    std::size_t top_flag = 0;
    auto* topics = app.add_subcommand("topics", "Rank topics by frequency or usage");
    topics->add_option("--by", by, "Ranking key")->check(CLI::IsMember({"freq", "usage"}));
    topics->add_option("--top", top_flag, "Number of rows")->check(CLI::PositiveNumber);

    auto* quadrant = app.add_subcommand("quadrant", "Split top-k topics by frequency and usage rank");
    quadrant->add_option("--top", top_flag, "Rank cutoff k")->check(CLI::PositiveNumber);

    std::vector<std::string> trend_topics;
    std::vector<std::string> exclude_flags;
    bool include_invalid = false;
    auto* trends = app.add_subcommand("trends", "Per-period Ratio2 series and trend labels");
    trends->add_option("topics", trend_topics, "Topics to track")->required();
    trends->add_option("--exclude", exclude_flags, "Period to drop, YYYY-MM-DD..YYYY-MM-DD");
    trends->add_flag("--include-invalid", include_invalid,
                     "Keep periods with negative usage deltas");

    std::string what = "stats";
    auto* exporter = app.add_subcommand("export", "Write the stored corpus or full topic table");
    exporter->add_option("--what", what, "corpus or stats")
        ->check(CLI::IsMember({"corpus", "stats"}));

    std::vector<std::string> argv_storage;
    argv_storage.emplace_back("hottopics");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        RunConfig config;
        if (!config_path.empty()) config = RunConfig::load(config_path);
        if (!store_flag.empty()) config.store_dir = store_flag;
        if (!format_flag.empty()) config.format = parse_output_format(format_flag);
        if (!stopwords_flag.empty()) config.stopwords_path = stopwords_flag;
        if (!synonyms_flag.empty()) config.synonyms_path = synonyms_flag;
        if (!phrases_flag.empty()) config.phrases_path = phrases_flag;
        if (top_flag > 0) config.top_k = top_flag;
        if (!exclude_flags.empty()) config.excluded_periods = exclude_flags;
        config.validate();

        Context ctx{std::move(config), out, err};
        if (*ingest) return cmd_ingest(ctx, ingest_files, ingest_date);
        if (*topics) return cmd_topics(ctx, by);
        if (*quadrant) return cmd_quadrant(ctx);
        if (*trends) return cmd_trends(ctx, trend_topics, include_invalid);
        if (*exporter) return cmd_export(ctx, what);
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << error_kind(e) << ": " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hottopics::cli
