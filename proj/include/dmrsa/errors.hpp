#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmrsa {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violated an operation's precondition (negative value,
/// zero modulus, residue out of range, value above an oracle bound, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// mod_inverse was asked for an inverse that does not exist.
/// Carries gcd(a, m), the witness of non-invertibility.
class NotInvertibleError : public Error {
public:
    NotInvertibleError(std::string msg, std::string gcd_decimal)
        : Error(std::move(msg)), gcd_(std::move(gcd_decimal)) {}

    /// Decimal representation of the offending gcd.
    const std::string& gcd() const noexcept { return gcd_; }

private:
    std::string gcd_;
};

/// Plaintext does not fit the key's message space. Carries the bound N1*N2.
class MessageTooLargeError : public Error {
public:
    MessageTooLargeError(std::string msg, std::string bound_decimal)
        : Error(std::move(msg)), bound_(std::move(bound_decimal)) {}

    /// Decimal representation of the exclusive upper bound N1*N2.
    const std::string& bound() const noexcept { return bound_; }

private:
    std::string bound_;
};

/// A bounded retry budget ran out (e.g. no suitable prime pair found).
class ExhaustionError : public Error {
public:
    using Error::Error;
};

/// Key-file text could not be parsed. line() is 1-based; 0 when the
/// failure is not tied to a single line.
class ParseError : public Error {
public:
    explicit ParseError(std::string msg, std::size_t line = 0)
        : Error(std::move(msg)), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

/// Key-file header names a version this implementation does not know.
class UnknownVersionError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Ciphertext stream bytes are malformed, truncated, or inconsistent.
class CorruptStreamError : public Error {
public:
    using Error::Error;
};

/// The moduli are too small to carry even one message byte per block.
class KeyTooSmallError : public Error {
public:
    using Error::Error;
};

} // namespace dmrsa
