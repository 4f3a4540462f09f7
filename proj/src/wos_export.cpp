#include "hottopics/wos_export.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <utility>

#include "hottopics/error.hpp"
#include "text_util.hpp"

namespace hottopics {

namespace {

constexpr std::string_view kContinuation = "   ";

struct Field {
    std::string tag;
    std::string value;
    std::size_t line;
};

std::vector<std::string> split_keywords(std::string_view value) {
    std::vector<std::string> out;
    for (auto part : detail::split(value, ';')) {
        auto kw = detail::trim(part);
        if (!kw.empty()) out.emplace_back(kw);
    }
    return out;
}

std::uint64_t parse_usage(const Field& f) {
    std::uint64_t v = 0;
    const char* first = f.value.data();
    const char* last = first + f.value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (f.value.empty() || ec != std::errc() || ptr != last)
        throw BadUsageValue(f.tag + " is not a non-negative integer: '" + f.value + "'", f.line);
    return v;
}

void append(std::string& dst, std::string_view piece, std::string_view sep) {
    if (piece.empty()) return;
    if (!dst.empty()) dst += sep;
    dst += piece;
}

ArticleRecord build_record(const std::vector<Field>& fields, std::size_t start_line) {
    // Repeated tags are merged; keyword lists keep their separator.
    std::vector<Field> merged;
    for (const auto& f : fields) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const Field& m) { return m.tag == f.tag; });
        if (it == merged.end()) {
            merged.push_back(f);
        } else {
            const bool keywords = f.tag == "DE" || f.tag == "ID";
            append(it->value, f.value, keywords ? "; " : " ");
        }
    }

    ArticleRecord rec;
    for (const auto& f : merged) {
        if (f.tag == "UT") {
            rec.accession_id = f.value;
        } else if (f.tag == "TI") {
            rec.title = f.value;
        } else if (f.tag == "DE") {
            rec.author_keywords = split_keywords(f.value);
        } else if (f.tag == "ID") {
            rec.keywords_plus = split_keywords(f.value);
        } else if (f.tag == "PY") {
            int year = 0;
            const char* first = f.value.data();
            const char* last = first + f.value.size();
            auto [ptr, ec] = std::from_chars(first, last, year);
            if (f.value.empty() || ec != std::errc() || ptr != last)
                throw MalformedRecord("PY is not a year: '" + f.value + "'", f.line);
            rec.pub_year = year;
        } else if (f.tag == "U1") {
            rec.usage_180d = parse_usage(f);
        } else if (f.tag == "U2") {
            rec.usage_since_2013 = parse_usage(f);
        } else {
            rec.extra_fields[f.tag] = f.value;
        }
    }
    if (rec.accession_id.empty())
        throw MalformedRecord("record has no UT accession number", start_line);
    return rec;
}

}  // namespace

bool is_valid_tag(std::string_view tag) {
    if (tag.size() != 2) return false;
    auto upper = [](char c) { return c >= 'A' && c <= 'Z'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    return upper(tag[0]) && (upper(tag[1]) || digit(tag[1]));
}

std::vector<ArticleRecord> parse_export(std::string_view text) {
    text = detail::strip_bom(text);
    if (auto bad = detail::find_invalid_utf8(text); bad != std::string_view::npos)
        throw EncodingError("invalid UTF-8 byte sequence", detail::line_of_offset(text, bad));

    std::vector<ArticleRecord> records;
    std::set<std::string> seen_ids;

    std::vector<Field> fields;
    bool in_record = false;
    bool saw_ef = false;
    std::size_t record_line = 0;

    detail::LineReader reader(text);
    std::string_view line;
    while (reader.next(line)) {
        const std::size_t ln = reader.line_no();
        if (detail::trim(line).empty()) continue;
        if (saw_ef) throw MalformedRecord("content after EF", ln);

        if (line.substr(0, kContinuation.size()) == kContinuation) {
            if (!in_record || fields.empty())
                throw MalformedRecord("continuation line without a preceding tag", ln);
            append(fields.back().value, detail::trim(line), " ");
            continue;
        }

        auto tag = line.substr(0, 2);
        if (!is_valid_tag(tag) || (line.size() > 2 && line[2] != ' '))
            throw MalformedRecord("expected a two letter field tag", ln);
        auto value = detail::trim(line.substr(2));

        if (tag == "EF") {
            if (in_record)
                throw MalformedRecord("record starting at line " + std::to_string(record_line) +
                                          " is not terminated by ER before EF",
                                      ln);
            saw_ef = true;
            continue;
        }
        if (tag == "ER") {
            if (!in_record) throw MalformedRecord("ER without an open record", ln);
            auto rec = build_record(fields, record_line);
            if (!seen_ids.insert(rec.accession_id).second)
                throw DuplicateAccession("duplicate accession number " + rec.accession_id,
                                         record_line);
            records.push_back(std::move(rec));
            fields.clear();
            in_record = false;
            continue;
        }
        if (!in_record) {
            // File header.
            if (tag == "FN" || tag == "VR") continue;
            in_record = true;
            record_line = ln;
        }
        fields.push_back({std::string(tag), std::string(value), ln});
    }

    if (in_record)
        throw MalformedRecord("record starting at line " + std::to_string(record_line) +
                                  " is not terminated by ER",
                              reader.line_no());
    if (!saw_ef) throw MalformedRecord("missing EF file terminator", reader.line_no());
    return records;
}

std::vector<ArticleRecord> read_export_file(const std::string& path) {
    const std::string text = detail::read_file(path);
    try {
        return parse_export(text);
    } catch (const MalformedRecord& e) {
        throw MalformedRecord(e.message(), e.line(), path);
    } catch (const DuplicateAccession& e) {
        throw DuplicateAccession(e.message(), e.line(), path);
    } catch (const BadUsageValue& e) {
        throw BadUsageValue(e.message(), e.line(), path);
    } catch (const EncodingError& e) {
        throw EncodingError(e.message(), e.line(), path);
    }
}

std::string write_export(const std::vector<ArticleRecord>& records) {
    std::string out = "FN Clarivate Analytics Web of Science\nVR 1.0\n";
    auto line = [&out](std::string_view tag, std::string_view value) {
        out += tag;
        if (!value.empty()) {
            out += ' ';
            out += value;
        }
        out += '\n';
    };
    auto keywords = [](const std::vector<std::string>& kws) {
        std::string joined;
        for (const auto& k : kws) append(joined, k, "; ");
        return joined;
    };

    for (const auto& r : records) {
        // The first line of a record must not look like a file header tag.
        for (const auto& [tag, value] : r.extra_fields)
            if (tag == "PT") line(tag, value);
        line("UT", r.accession_id);
        if (!r.title.empty()) line("TI", r.title);
        for (const auto& [tag, value] : r.extra_fields)
            if (tag != "PT") line(tag, value);
        if (!r.author_keywords.empty()) line("DE", keywords(r.author_keywords));
        if (!r.keywords_plus.empty()) line("ID", keywords(r.keywords_plus));
        if (r.pub_year) line("PY", std::to_string(*r.pub_year));
        line("U1", std::to_string(r.usage_180d));
        line("U2", std::to_string(r.usage_since_2013));
        out += "ER\n\n";
    }
    out += "EF\n";
    return out;
}

}  // namespace hottopics
