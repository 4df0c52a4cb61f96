/**
 * @file errors.hpp
 * @brief Exception types shared by every aquapipe module
 */
#pragma once

#include <stdexcept>
#include <string>

namespace aquapipe {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// File contents are not a supported or well-formed image.
class FormatError : public Error {
public:
    using Error::Error;
};

/// An argument violates the operation's contract.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Input is well-formed but numerically degenerate for the operation
/// (all-black image, zero channel mean, ...).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Configuration file or value failed validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Wraps a failure inside one pipeline stage.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace aquapipe
