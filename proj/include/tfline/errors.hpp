#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfline {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid physical or numerical parameter (l <= 0, negative resistance, bad window...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Ordinal ranks of a sample index and a termination do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// The sample point does not exist yet in the requested truncation.
class NotMaterializedError : public Error {
public:
    NotMaterializedError(std::uint64_t requested_n, std::uint64_t minimal_n);

    std::uint64_t requested_n() const noexcept { return requested_; }
    std::uint64_t minimal_n() const noexcept { return minimal_; }

private:
    std::uint64_t requested_;
    std::uint64_t minimal_;
};

/// Operation is not defined for the line's regime (e.g. time domain on a GENERAL line).
class RegimeError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain (Re s <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// |r_s r_r e^{-2 gamma L}| >= 1: the reflection series cannot be summed in closed form.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double ratio);
    double ratio() const noexcept { return ratio_; }

private:
    double ratio_;
};

/// Pointwise division hit zeros of the denominator inside the checked window.
class DivisionError : public Error {
public:
    explicit DivisionError(std::vector<std::uint64_t> offending);
    const std::vector<std::uint64_t>& offending() const noexcept { return offending_; }

private:
    std::vector<std::uint64_t> offending_;
};

/// Configuration file problem with a 1-based source position.
class ConfigError : public Error {
public:
    ConfigError(std::string message, std::size_t line, std::size_t column);

    const std::string& message() const noexcept { return message_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace tfline
