#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tredkit/weight.hpp"

namespace tredkit {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

/// Arc label: +1 excitatory, -1 inhibitory.
enum class Sign : std::int8_t { Neg = -1, Pos = 1 };

constexpr Sign operator*(Sign a, Sign b) {
  return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}
constexpr Sign operator-(Sign s) { return s == Sign::Pos ? Sign::Neg : Sign::Pos; }
constexpr int to_int(Sign s) { return static_cast<int>(s); }
/// 0 for +1, 1 for -1; the parity layer in the doubled graph V x {+1,-1}.
constexpr int layer(Sign s) { return s == Sign::Pos ? 0 : 1; }
constexpr char sign_char(Sign s) { return s == Sign::Pos ? '+' : '-'; }

struct Arc {
  NodeId src = 0;
  NodeId dst = 0;
  Sign label = Sign::Pos;
  Weight weight = kUnitWeight;
  bool critical = false;

  bool is_loop() const { return src == dst; }
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Sorted, duplicate-free list of arc ids into one graph.
using ArcSet = std::vector<ArcId>;

/// Immutable signed digraph. Arcs are stored sorted by (src, dst, label) so
/// an ArcId is the rank of the arc in that order; out-lists are contiguous in
/// it and in-lists are sorted by (src, label). Build one through Builder.
class SignedDigraph {
 public:
  class Builder;

  SignedDigraph() = default;

  std::size_t node_count() const { return names_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  const Arc& arc(ArcId a) const { return arcs_[a]; }
  std::span<const Arc> arcs() const { return arcs_; }

  std::span<const ArcId> out_arcs(NodeId u) const {
    return {out_ids_.data() + out_begin_[u], out_ids_.data() + out_begin_[u + 1]};
  }
  std::span<const ArcId> in_arcs(NodeId v) const {
    return {in_ids_.data() + in_begin_[v], in_ids_.data() + in_begin_[v + 1]};
  }

  /// Display name; unnamed nodes render as their index.
  std::string name(NodeId u) const;
  bool has_name(NodeId u) const { return !names_[u].empty(); }
  std::optional<NodeId> find_node(std::string_view name) const;
  std::optional<ArcId> find_arc(NodeId src, NodeId dst, Sign label) const;

  ArcSet all_arcs() const;
  ArcSet critical_arcs() const;
  bool is_critical(ArcId a) const { return arcs_[a].critical; }

  /// Same node table, only the listed arcs. Arc ids of the result are the
  /// positions of the kept arcs in `kept`.
  SignedDigraph with_arcs(std::span<const ArcId> kept) const;
  /// Node-induced subgraph; `nodes` must be sorted. `arc_map` receives, for
  /// each arc of the result, its id in this graph.
  SignedDigraph induced(std::span<const NodeId> nodes, std::vector<ArcId>* arc_map = nullptr) const;
  /// Every arc reversed, arc attributes preserved.
  SignedDigraph reversed() const;
  /// Copy with every critical flag cleared.
  SignedDigraph without_critical() const;

  friend bool operator==(const SignedDigraph& a, const SignedDigraph& b) {
    return a.names_ == b.names_ && a.arcs_ == b.arcs_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> out_begin_, in_begin_;
  std::vector<ArcId> out_ids_, in_ids_;

  void index();
};

class SignedDigraph::Builder {
 public:
  /// Returns the existing node when the name is already known.
  NodeId add_node(std::string name);
  NodeId add_node();
  void ensure_nodes(std::size_t n);
  /// Duplicate (src, dst, label) triples are merged: critical flags OR-ed,
  /// weights min-ed.
  void add_arc(NodeId src, NodeId dst, Sign label, Weight weight = kUnitWeight, bool critical = false);
  void add_arc(const Arc& a) { add_arc(a.src, a.dst, a.label, a.weight, a.critical); }
  std::size_t node_count() const { return names_.size(); }
  std::optional<NodeId> find_node(std::string_view name) const;

  SignedDigraph build() &&;

 private:
  friend class SignedDigraph;
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::vector<Arc> arcs_;
};

/// Label-blind helper: the sign an algorithm sees for arc `a`.
inline Sign effective_sign(const Arc& a, bool label_aware) {
  return label_aware ? a.label : Sign::Pos;
}

ArcSet set_union(std::span<const ArcId> a, std::span<const ArcId> b);
ArcSet set_difference(std::span<const ArcId> a, std::span<const ArcId> b);
bool is_subset(std::span<const ArcId> a, std::span<const ArcId> b);
/// Sorts and deduplicates in place.
void normalize(ArcSet& s);
Weight total_weight(const SignedDigraph& g, std::span<const ArcId> arcs);

}  // namespace tredkit
