#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "stabgap/model.hpp"

namespace stabgap {

/// Ordered weight-one decomposition of a target word. Prefixes are distinct,
/// so the walk on the Cayley graph of (Z_2^{2N}, W_1) is free of loops.
struct PauliPath {
  PauliWord target;
  std::vector<PauliWord> steps;

  /// XOR-of-steps == target, every step weight one, all prefixes distinct.
  void validate() const;
};

/// Strategy that emits one Pauli path per target, reused for every initial
/// syndrome.
class PathFamily {
 public:
  enum class Kind { fixed_order, css_string, explicit_map };

  /// Address every qubit at most once, in a fixed site ordering (the natural
  /// ordering when none is given). Y counts as one visit.
  static PathFamily fixed_order(std::vector<int> site_order = {});
  /// Toric-lattice string decomposition: the Z part is built as excitation
  /// trajectories on the dual lattice, then the X part on the primal lattice;
  /// Y sites are visited by both passes, so paths can reach length 2N.
  static PathFamily css_string(const ToricLayout& layout);
  /// User-supplied paths, one per target.
  static PathFamily explicit_paths(std::map<PauliWord, PauliPath> paths);

  Kind kind() const { return kind_; }
  /// Emits the path for a target; throws input_error when the family cannot
  /// serve the model (shape mismatch) or the target (missing explicit path).
  PauliPath path_for(const StabilizerModel& model, const PauliWord& target) const;

 private:
  Kind kind_ = Kind::fixed_order;
  std::vector<int> site_order_;
  std::optional<ToricLayout> layout_;
  std::map<PauliWord, PauliPath> explicit_;
};

struct PerTargetCost {
  PauliWord target;
  Rational cost;
  PauliWord bottleneck_prefix;
  int path_length = 0;
};

/// Result of a barrier computation: the exact generalized energy barrier or a
/// family upper bound, with the witness target and bottleneck prefix.
struct BarrierReport {
  Rational barrier;
  PauliWord witness_target;
  PauliWord witness_prefix;
  bool exact = false;        // min-max over all paths per target
  bool exhaustive = false;   // all 4^N targets covered
  bool single_visit = false; // every emitted path addresses each qubit at most once
  int eta_star = 0;          // longest emitted/witness path
  std::vector<PerTargetCost> per_target;  // filled when requested
};

struct BarrierLimits {
  int max_n_exact_barrier = 5;   // 4^N targets x bottleneck searches
  int max_n_single_target = 6;   // one bottleneck search
  bool force = false;            // override the gates (callers should warn)
};

/// Max over steps t of sum_k 2|J_k| e_k(prefix_t) (1 - e_k(target)); the final
/// prefix is the target itself and contributes zero.
Rational path_cost(const StabilizerModel& model, const PauliPath& path);
Rational path_cost(const StabilizerModel& model, const PauliPath& path,
                   PauliWord* bottleneck_prefix);

/// Bottleneck-shortest-path value over the Cayley graph from the identity to
/// the target, where a node costs sum_k 2|J_k| e_k(node) (1 - e_k(target)) and
/// a path is scored by its maximum node cost. Ties prefer shorter paths, then
/// the earlier-discovered parent. Exact rational arithmetic throughout.
struct ExactCostResult {
  Rational cost;
  PauliPath witness;
  PauliWord bottleneck_prefix;
};
ExactCostResult exact_energy_cost(const StabilizerModel& model, const PauliWord& target,
                                  const BarrierLimits& limits = {});

/// Exact generalized barrier: max of exact_energy_cost over all 4^N targets.
BarrierReport generalized_barrier_exact(const StabilizerModel& model,
                                        const BarrierLimits& limits = {},
                                        bool keep_per_target = false, int threads = 0);

/// Targets to feed a heuristic family.
struct TargetSelection {
  bool all = true;
  std::int64_t sample_count = 0;
  std::uint64_t seed = 0;
  static TargetSelection all_targets() { return {}; }
  static TargetSelection sample(std::int64_t count, std::uint64_t seed) {
    return {false, count, seed};
  }
};

/// Family upper bound: max path_cost over the requested targets. Exact flag is
/// never set; sampled runs also clear the exhaustive flag.
BarrierReport heuristic_barrier(const StabilizerModel& model, const PathFamily& family,
                                const TargetSelection& targets = {},
                                bool keep_per_target = false, int threads = 0);

/// Generators commuting with the target; its syndrome w.r.t. the reduced set
/// is all-zero.
GeneratorSet reduced_generator_set(const StabilizerModel& model, const PauliWord& target);

/// For 1-D models: max number of generators whose support straddles one bond
/// of the given site ordering. Errors when some generator support is not an
/// interval in that ordering.
int width(const StabilizerModel& model, const std::vector<int>& site_order);

/// Edge-indexed view of a family's paths over all 4^N targets, used by the
/// canonical-paths sums (support number bound, C(beta)). An edge is the pair
/// (prefix word, weight-one step) of one path position.
struct FamilyPathIndex {
  int n = 0;
  int w1_count = 0;
  /// Per target code: the path as (prefix code before the step, W1 step index).
  std::vector<std::vector<std::pair<std::uint64_t, int>>> target_edges;
  /// Edge key -> codes of all targets whose path crosses that edge.
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> paths_through;

  std::uint64_t edge_key(std::uint64_t prefix_code, int step_idx) const {
    return prefix_code * (std::uint64_t)w1_count + (std::uint64_t)step_idx;
  }
};

FamilyPathIndex build_family_path_index(const StabilizerModel& model,
                                        const PathFamily& family, int max_n = 3,
                                        bool force = false);

}  // namespace stabgap
