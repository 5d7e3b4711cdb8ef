#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "tredkit/graph.hpp"

namespace tredkit {

struct ParityTriple {
  NodeId from = 0;
  NodeId to = 0;
  Sign parity = Sign::Pos;

  friend auto operator<=>(const ParityTriple& a, const ParityTriple& b) {
    if (auto c = a.from <=> b.from; c != 0) return c;
    if (auto c = a.to <=> b.to; c != 0) return c;
    return -to_int(a.parity) <=> -to_int(b.parity);
  }
  friend bool operator==(const ParityTriple&, const ParityTriple&) = default;
};

/// Walk reachability with parities: (u, v, p) is present iff some walk from u
/// to v has label product p. Always contains (u, u, +1).
class ParityClosure {
 public:
  ParityClosure() = default;
  explicit ParityClosure(std::vector<ParityTriple> sorted) : triples_(std::move(sorted)) {}

  bool contains(NodeId u, NodeId v, Sign p) const;
  /// Label-blind projection: (u, v) for any parity.
  bool reaches(NodeId u, NodeId v) const {
    return contains(u, v, Sign::Pos) || contains(u, v, Sign::Neg);
  }
  std::span<const ParityTriple> triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  friend bool operator==(const ParityClosure&, const ParityClosure&) = default;

 private:
  std::vector<ParityTriple> triples_;
};

ParityClosure parity_closure(const SignedDigraph& g);

/// Strong components (labels ignored). Components are numbered in a
/// topological order of the component graph.
struct Components {
  std::vector<std::uint32_t> component_of;
  std::vector<std::vector<NodeId>> members;  // each sorted ascending
  std::size_t count() const { return members.size(); }
};

/// `active`, when non-empty, masks the arcs that exist (nonzero = present).
Components strong_components(const SignedDigraph& g, std::span<const char> active = {});

struct CondensationArc {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  /// Indexed by layer(): the minimum-weight original arc carrying that label,
  /// ties broken by (src, dst). Empty when no arc carries the label.
  std::array<std::optional<ArcId>, 2> representative;

  bool has(Sign s) const { return representative[layer(s)].has_value(); }
};

struct Condensation {
  Components scc;
  std::vector<CondensationArc> dag_arcs;  // sorted by (from, to)

  const std::vector<std::uint32_t>& component_of() const { return scc.component_of; }
  const std::vector<std::vector<NodeId>>& components() const { return scc.members; }
};

Condensation scc_condense(const SignedDigraph& g);

enum class ParityClass { Single, Double };

struct ParityClassification {
  ParityClass kind = ParityClass::Single;
  /// A node with a closed walk of parity -1 (DoubleParity only).
  std::optional<NodeId> witness;
};

/// Throws NotStronglyConnected unless g has exactly one strong component.
ParityClassification classify_parity(const SignedDigraph& g);

/// True iff the kept arcs reproduce the closure of g: the parity closure when
/// `label_aware`, plain reachability otherwise. Throws ArcNotInGraph.
bool closure_equal(const SignedDigraph& g, std::span<const ArcId> kept, bool label_aware);

/// Per-component parity structure used by the combine step and by
/// closure_equal. For a single-parity component every walk u -> v inside it
/// has parity potential[u] * potential[v]; a double-parity component
/// ("absorber") offers both parities between any two of its nodes.
struct ComponentParity {
  std::vector<bool> absorber;       // per component
  std::vector<Sign> potential;      // per node; +1 inside absorbers
};

ComponentParity component_parity(const SignedDigraph& g, const Components& scc, bool label_aware,
                                 std::span<const char> active = {});

/// Reusable walk-existence query on a masked subgraph, bidirectional BFS over
/// the doubled graph. Buffers are kept between queries.
class ReachProbe {
 public:
  explicit ReachProbe(const SignedDigraph& g);

  /// Is there a walk from `u` to `v` with parity `p` (any parity when
  /// !label_aware) using only arcs with active[a] != 0 other than `skip`?
  bool reachable(NodeId u, NodeId v, Sign p, bool label_aware, std::span<const char> active,
                 std::optional<ArcId> skip = std::nullopt);

 private:
  const SignedDigraph& g_;
  std::vector<std::uint32_t> fwd_mark_, bwd_mark_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> fwd_frontier_, bwd_frontier_, next_;
};

}  // namespace tredkit
