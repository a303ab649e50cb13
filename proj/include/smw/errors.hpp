#pragma once

#include <stdexcept>
#include <string>

namespace smw {

/// Violated precondition or type invariant.
struct ContractViolation : std::invalid_argument {
    explicit ContractViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// Calibration window without usable variance (every sensor column constant).
struct DegenerateWindowError : std::runtime_error {
    explicit DegenerateWindowError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or unreadable input file.
struct LoadError : std::runtime_error {
    explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace smw
