#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stabgap/model.hpp"

namespace stabgap {

/// Text model description: `key = value` lines, lists in brackets, comments
/// with '#'. Exactly one of the explicit block (n_qubits, generators,
/// couplings) or a builtin block (builtin = ising|cluster|toric with its size
/// parameters) must be present.
struct ModelFile {
  std::string name;

  std::optional<int> n_qubits;
  std::vector<std::string> generators;
  std::vector<std::string> couplings;

  std::string builtin;  // "", "ising", "cluster", "toric"
  int n = 0;
  int lx = 0, ly = 0;
  std::string coupling = "1";
  bool periodic = false;

  static ModelFile parse_file(const std::string& path);
  static ModelFile parse_string(const std::string& text, const std::string& origin);

  GeneratorSet to_generators() const;
  /// Lattice geometry, present only for builtin toric models.
  std::optional<ToricLayout> layout() const;
};

}  // namespace stabgap
