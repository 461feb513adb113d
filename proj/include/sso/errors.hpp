#pragma once

#include <stdexcept>
#include <string>

namespace sso {

/// Bad user input: config files, CLI values, invalid parameter combinations.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: non-convergence, impossible solve requests at runtime.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg, int index = -1)
        : std::runtime_error(msg), failed_index(index) {}
    /// index of the first offending eigenpair, or -1 when not applicable
    int failed_index;
};

/// Filesystem trouble while reading configs or writing tables.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace sso
