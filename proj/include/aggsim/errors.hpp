#pragma once

#include <stdexcept>
#include <string>

namespace aggsim {

/// Invalid or inconsistent configuration. The message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A trial could not be set up, e.g. robots cannot be placed without overlap.
class InitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input record or data file.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace aggsim
