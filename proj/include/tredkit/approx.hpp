#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "tredkit/graph.hpp"
#include "tredkit/reduction.hpp"

namespace tredkit {

enum class SolverKind { Dag, Fj, Critical2, Kry, MaxEd2, Btr };

/// Accepts `dag`, `fj`, `critical2`, `kry`, `maxed2`, `btr`.
std::optional<SolverKind> parse_solver(std::string_view name);
std::string_view solver_name(SolverKind kind);

inline constexpr int kDefaultKryC = 12;
/// Node expansions allowed per cycle search round.
inline constexpr std::size_t kDefaultCycleBudget = 1'000'000;

struct SolverOptions {
  int kry_c = kDefaultKryC;
  std::size_t cycle_budget = kDefaultCycleBudget;
  /// Solver applied to each strong component by min_btr.
  SolverKind scc_solver = SolverKind::Critical2;
};

// All solvers below treat labels as absent, root every arborescence at node
// 0, keep every critical arc and return a verify_repair-pruned (irredundant)
// set in `kept`; the raw construction is in `proposal`.

/// Union of a minimum in- and out-arborescence under the stored weights.
/// Throws NotStronglyConnected.
ReductionResult fj_weighted_min_ed(const SignedDigraph& g);

/// In-arborescence A1 under weights 0 on D and 1 elsewhere, then an
/// out-arborescence under weights 0 on D and A1; proposal A1 + A2 + D.
/// Throws NotStronglyConnected.
ReductionResult critical_min_ed_2approx(const SignedDigraph& g);

/// Cycle contraction for i = c down to 3: each round selects and contracts
/// cycles of at least i arcs until none is found. The residual contains only
/// 2-cycles over a tree and is kept whole. Throws NotStronglyConnected,
/// DomainError (c < 3), CycleSearchBudgetExceeded.
ReductionResult kry_contract(const SignedDigraph& g, int c = kDefaultKryC,
                             std::size_t budget = kDefaultCycleBudget);

/// Every critical arc (u, v, l) replaced by a fresh node x and non-critical
/// arcs (u, x, +) and (x, v, l). Original nodes keep their ids.
struct PseudonodeTransform {
  SignedDigraph graph;
  /// Per arc of `graph`: the original arc it came from.
  std::vector<ArcId> origin;
  /// Per arc of `graph`: true for either half of a split critical arc.
  std::vector<char> is_half;
  /// Original arc ids hit by `arcs` (ids of `graph`).
  ArcSet map_back(std::span<const ArcId> arcs) const;
};
PseudonodeTransform pseudonode_transform(const SignedDigraph& g);

/// Necessary arcs F (critical or sole arc of some singleton cut); F alone
/// when it preserves the closure, otherwise F plus an out-arborescence over
/// the F-contracted graph and an in-arborescence with those arcs made free.
/// Throws NotStronglyConnected.
ReductionResult critical_max_ed_2approx(const SignedDigraph& g);

/// Full label-aware pipeline: per strong component a label-blind solve with
/// opts.scc_solver, parity augmentation of double-parity components, exact
/// inter-component combine, verify_repair.
ReductionResult min_btr(const SignedDigraph& g, const SolverOptions& opts = {});

/// Any graph, any solver. The strongly-connected solvers run per component
/// through decompose_solve_combine; with label_aware each component result is
/// parity-augmented. `Btr` means Critical2 with label_aware forced on.
ReductionResult reduce(const SignedDigraph& g, SolverKind algo, bool label_aware, const SolverOptions& opts = {});

/// Lower bound on the optimum kept count: per nontrivial component
/// max(matching bound, |D in component|), plus the forced singleton and
/// inter-component arcs.
std::size_t pipeline_lower_bound(const SignedDigraph& g, bool label_aware);

}  // namespace tredkit
