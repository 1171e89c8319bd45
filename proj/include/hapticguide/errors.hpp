#pragma once

#include <stdexcept>
#include <string>

namespace hapticguide {

/// Invalid scenario, parameter section or CLI configuration (exit code 1).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// The simulation reached a state the model forbids, e.g. the user left the tracked space (exit code 2).
class SimulationFault : public std::runtime_error {
public:
    explicit SimulationFault(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hapticguide
