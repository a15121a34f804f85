#pragma once

#include <stdexcept>
#include <string>

namespace csram {

// Bad user-supplied configuration (CLI maps this to exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Unreadable/corrupt files and other environment failures (exit code 2).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace csram
