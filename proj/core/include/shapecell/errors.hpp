#pragma once

#include <stdexcept>
#include <string>

namespace shapecell {

// Bad shapes, bad channel counts, out-of-range arguments.
class InvalidInputError : public std::invalid_argument {
public:
    explicit InvalidInputError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Missing or unreadable files, malformed datasets, checkpoint/architecture
// mismatches. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad config file contents. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// NaN losses, diverging optimization, failed numeric checks. Maps to CLI
// exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace shapecell
