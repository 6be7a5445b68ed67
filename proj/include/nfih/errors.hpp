#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nfih {

/// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed polynomial text; `position` is a byte offset into the input.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Malformed input file (JSON structure, unknown ids, bad map lines).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Input violates an operation's precondition (dimension, variable, degree...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An algorithm could not produce a result for a well-formed input.
class AnalysisError : public Error {
public:
    using Error::Error;
};

/// A chain complex or filtration failed a structural check.
class ComplexError : public Error {
public:
    using Error::Error;
};

}  // namespace nfih
