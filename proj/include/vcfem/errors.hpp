#pragma once
#include <stdexcept>
#include <string>

namespace vcfem {

// Invalid user-facing configuration (mesh sizes, boundary specs, CLI input).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative solver failed to reach its tolerance within the iteration cap.
struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

// A caller violated an internal contract (e.g. damage value escaping [0,1]).
struct ContractError : std::logic_error {
    explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace vcfem
