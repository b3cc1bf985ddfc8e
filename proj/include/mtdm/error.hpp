#pragma once

#include <stdexcept>
#include <string>

namespace mtdm {

/// Malformed input: dimension mismatches, out-of-range values, relations that
/// are not preorders, unknown indices.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A preference system admits no normalized representation at the requested
/// granularity (the ∇ constraint system is infeasible).
class InconsistencyError : public std::runtime_error {
 public:
  explicit InconsistencyError(const std::string& what) : std::runtime_error(what) {}
};

/// Exact vertex enumeration refused because the instance exceeds the guard.
class EnumerationLimitError : public std::runtime_error {
 public:
  explicit EnumerationLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// The simplex iteration cap was hit; indicates a numerical problem.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mtdm
