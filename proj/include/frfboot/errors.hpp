#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frfboot {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates an operation's precondition (ordering, ranges, sizes).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Frequencies have no common rational base at the configured resolution.
class IncommensurableGridError : public Error {
public:
    using Error::Error;
};

/// The sampling rate does not exceed twice the highest frequency.
class AliasingError : public Error {
public:
    using Error::Error;
};

/// A grid frequency does not fall on a DFT bin of the time grid.
class AlignmentError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

/// Stimulus has no spectral power, so no transfer can be estimated.
class NoExcitationError : public Error {
public:
    using Error::Error;
};

class EmptyBandError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; line and column are 1-based (0 when not applicable).
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(format(line, column, what)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& what) {
        std::string msg;
        if (line > 0) {
            msg += "line " + std::to_string(line);
            if (column > 0)
                msg += ", column " + std::to_string(column);
            msg += ": ";
        }
        return msg + what;
    }

    std::size_t line_;
    std::size_t column_;
};

class VersionError : public Error {
public:
    using Error::Error;
};

} // namespace frfboot
