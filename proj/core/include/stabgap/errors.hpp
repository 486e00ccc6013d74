#pragma once

#include <stdexcept>
#include <string>

namespace stabgap {

/// Malformed input: bad Pauli strings, inconsistent model files, invalid
/// syndromes, family/model mismatches. Maps to CLI exit code 2.
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// An exhaustive operation was requested beyond its configured size gate.
/// Maps to CLI exit code 3.
class size_limit_error : public std::runtime_error {
 public:
  explicit size_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical self-check failed (non-PSD pencil, asymmetric block, ...).
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace stabgap
