#pragma once

#include <stdexcept>
#include <string>

namespace hvlab {

/// Invalid run/generator/CLI configuration. Mapped to exit code 2 by the tool.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A statistic was requested from insufficient data (e.g. a correlation with
/// zero joint events, or an ensemble below the minimum size).
class StatisticsError : public std::runtime_error {
public:
    explicit StatisticsError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hvlab
