#pragma once

#include <stdexcept>
#include <string>

namespace newsrank {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input value (URL, timestamp, record field).
class ParseError : public Error {
public:
    using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration or operation precondition.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A pipeline stage ran before the stage it depends on.
class DependencyError : public Error {
public:
    DependencyError(std::string stage, const std::string& what)
        : Error(what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

} // namespace newsrank
