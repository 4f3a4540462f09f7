#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hottopics {

/// Base of every error raised by the library. Catch this to handle all of them.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An error tied to a location in an input file. Formats as
/// "source:line: message"; line is 1-based, 0 when unknown.
class LocatedError : public Error {
public:
    LocatedError(const std::string& message, std::size_t line, const std::string& source = {})
        : Error(format(message, line, source)), message_(message), line_(line), source_(source) {}

    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& source() const noexcept { return source_; }

private:
    static std::string format(const std::string& message, std::size_t line,
                              const std::string& source) {
        std::string out = source;
        if (line) out += (out.empty() ? "line " : ":") + std::to_string(line);
        if (!out.empty()) out += ": ";
        return out + message;
    }

    std::string message_;
    std::size_t line_;
    std::string source_;
};

// Export parsing.
class MalformedRecord : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class DuplicateAccession : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class BadUsageValue : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class EncodingError : public LocatedError {
public:
    using LocatedError::LocatedError;
};

// Keyword extraction.
class EmptyYield : public Error {
public:
    explicit EmptyYield(const std::string& accession_id)
        : Error("no keywords could be extracted from record " + accession_id),
          accession_id_(accession_id) {}

    const std::string& accession_id() const noexcept { return accession_id_; }

private:
    std::string accession_id_;
};

/// Bad stopword/synonym/config file content.
class ConfigError : public LocatedError {
public:
    using LocatedError::LocatedError;
};

// Aggregation.
class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("corpus contains no records") {}
};

// Snapshot store.
class DuplicateDate : public Error {
public:
    using Error::Error;
};

class UnwritableStore : public Error {
public:
    using Error::Error;
};

class BadOrder : public Error {
public:
    using Error::Error;
};

class InsufficientSnapshots : public Error {
public:
    InsufficientSnapshots() : Error("need >= 2 snapshots") {}
};

class BadSnapshotFile : public LocatedError {
public:
    using LocatedError::LocatedError;
};

}  // namespace hottopics
