#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tredkit/graph.hpp"

namespace tredkit {

struct ReductionStats {
  std::size_t kept_count = 0;
  std::size_t total_count = 0;
  /// eta: a lower bound on the optimum of the variant solved, when known.
  std::optional<std::size_t> lower_bound;
  /// R = 1 - kept/total (0 for an empty graph).
  double redundancy = 0.0;
};

struct ReductionResult {
  ArcSet kept;
  ArcSet deleted;
  /// Arcs added back by parity augmentation (all members of `kept`).
  ArcSet augmentation;
  /// The solver's own arc set before verification and pruning.
  ArcSet proposal;
  std::string algorithm;
  bool label_aware = false;
  bool verified = false;
  Weight kept_weight;
  ReductionStats stats;
  /// Algorithm-specific counters, reported but not part of any contract.
  std::vector<std::pair<std::string, std::int64_t>> diagnostics;
};

/// Fills deleted/stats/weight and re-checks closure equality.
ReductionResult finish_result(const SignedDigraph& g, ArcSet kept, std::string algorithm, bool label_aware);

/// Exact reduction of an acyclic graph: every critical arc, plus each other
/// arc (u, v, p) that has no alternative u -> v walk of parity p (any parity
/// when !label_aware). Throws NotAcyclic, including for self-loops.
ReductionResult dag_reduce(const SignedDigraph& g, bool label_aware);

/// Receives the induced subgraph of one nontrivial strong component (and the
/// original ids of its nodes) and returns a closure-preserving arc subset of
/// it, with ids local to that subgraph.
using SccSolver = std::function<ArcSet(const SignedDigraph& component, std::span<const NodeId> members)>;

/// Solves every strong component with `solver`, keeps the exact minimum of
/// inter-component arcs and every critical arc, then runs verify_repair.
ReductionResult decompose_solve_combine(const SignedDigraph& g, const SccSolver& solver, bool label_aware,
                                        std::string algorithm = "pipeline");

/// The inter-component part of an optimal solution. Inter-component arcs are
/// grouped by (component pair, parity normalized through the component
/// potentials); a group whose effect is reproduced by other groups is
/// dropped. Returns one representative per kept group plus every critical
/// inter-component arc.
ArcSet inter_component_arcs(const SignedDigraph& g, bool label_aware);

/// Arcs a singleton component must keep: critical self-loops, and a negative
/// self-loop when label-aware.
ArcSet singleton_arcs(const SignedDigraph& g, NodeId u, bool label_aware);

struct AugmentResult {
  ArcSet kept;
  std::optional<ArcId> added;
};

/// Lifts a label-blind solution of a strongly connected graph to a
/// label-aware one by adding at most one parity-violating arc.
/// Throws NotStronglyConnected, NoArborescence, MissingWitness.
AugmentResult parity_augment(const SignedDigraph& g, std::span<const ArcId> kept);

/// Returns a closure-equal, irredundant arc set around `kept`: missing arcs
/// are re-added cheapest first, then non-critical arcs are pruned in reverse
/// insertion order.
ArcSet verify_repair(const SignedDigraph& g, std::span<const ArcId> kept, bool label_aware);

}  // namespace tredkit
