#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tredkit/graph.hpp"

namespace tredkit {

enum class Orientation { In, Out };

/// Rooted spanning tree. For Out, parent_arc[v] is the unique arc entering v;
/// for In, the unique arc leaving v. Empty at the root.
struct Arborescence {
  NodeId root = 0;
  Orientation orientation = Orientation::Out;
  std::vector<std::optional<ArcId>> parent_arc;
  Weight total_weight;

  ArcSet arcs() const;
};

/// Minimum-weight spanning out-arborescence (Edmonds / Chu-Liu contraction).
/// Self-loops and arcs entering the root are ignored; among equally cheap
/// entering arcs the one with the smaller (src, label) wins. Throws
/// Unreachable(v) for the lowest node not reachable from `root`.
Arborescence min_out_arborescence(const SignedDigraph& g, NodeId root);
/// Same, with per-arc weights overriding the stored ones (indexed by ArcId).
Arborescence min_out_arborescence(const SignedDigraph& g, NodeId root, std::span<const Weight> weights);

/// Minimum spanning in-arborescence: the out-arborescence of the reversed
/// graph, mapped back arc for arc.
Arborescence min_in_arborescence(const SignedDigraph& g, NodeId root);
Arborescence min_in_arborescence(const SignedDigraph& g, NodeId root, std::span<const Weight> weights);

namespace detail {

struct BranchArc {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::int64_t weight = 0;
};

/// Core contraction algorithm on a plain multigraph. Ties are broken by
/// position in `arcs`. Returns, per node, the index of its chosen entering
/// arc (-1 for the root). Throws Unreachable.
std::vector<std::int64_t> min_branching(std::size_t n, std::uint32_t root, std::span<const BranchArc> arcs);

}  // namespace detail

}  // namespace tredkit
