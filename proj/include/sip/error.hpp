#ifndef SIP_ERROR_HPP
#define SIP_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sip {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed invariant expression; `offset()` is the byte offset into the source.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation outside a function's real domain (ln of non-positive, sqrt of negative, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Parameters outside the admissible range of a family, extension or state index.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Pole, vanishing denominator, or a non-finite intermediate.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A denominator with a root at `location()`.
class PoleError : public NumericalError {
public:
    PoleError(const std::string& what, double location) : NumericalError(what), location_(location) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

/// Bad job configuration (CLI and JSON front end).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace sip

#endif  // SIP_ERROR_HPP
