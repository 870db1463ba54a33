#pragma once

#include <stdexcept>
#include <string>

namespace gv {

/// Malformed or inadmissible input: bad files, parameters outside their
/// domain, mismatched dimensions, unknown vertex ids.
class InputError : public std::invalid_argument {
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical kernel failed to meet its own postcondition (linear solve
/// residual too large, bisection budget exhausted, bound contradicted).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gv
