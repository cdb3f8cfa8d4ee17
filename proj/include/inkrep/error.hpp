#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inkrep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input text that does not follow the expected syntax. `position` is a line
/// number, byte offset or token index depending on the reader; `where()`
/// names which.
class ParseError : public Error {
public:
    enum class Unit { Line, Byte, Token, Trace };

    ParseError(Unit unit, std::size_t position, const std::string& what)
        : Error(describe(unit, position, what)), unit_(unit), position_(position) {}

    Unit unit() const { return unit_; }
    std::size_t position() const { return position_; }

    /// Same error with `prefix` (typically a file name) prepended.
    ParseError with_context(const std::string& prefix) const {
        return ParseError(prefix + ": " + what(), unit_, position_);
    }

private:
    ParseError(const std::string& message, Unit unit, std::size_t position)
        : Error(message), unit_(unit), position_(position) {}

    static std::string describe(Unit unit, std::size_t position, const std::string& what) {
        switch (unit) {
            case Unit::Line: return "line " + std::to_string(position) + ": " + what;
            case Unit::Byte: return "byte offset " + std::to_string(position) + ": " + what;
            case Unit::Token: return "token " + std::to_string(position) + ": " + what;
            case Unit::Trace: return "trace " + std::to_string(position) + ": " + what;
        }
        return what;
    }

    Unit unit_;
    std::size_t position_;
};

/// Well-formed input that violates a data invariant (empty ink, missing field).
class SchemaError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Reconstructed coordinates fell outside the declared grid.
class RangeError : public Error {
public:
    using Error::Error;
};

}  // namespace inkrep
