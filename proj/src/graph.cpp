#include "tredkit/graph.hpp"

#include <algorithm>
#include <charconv>
#include <tuple>

#include "tredkit/errors.hpp"

namespace tredkit {

// ---- Weight -------------------------------------------------------------

Weight Weight::parse(std::string_view text) {
  auto bad = [&] { return DomainError("malformed weight '" + std::string(text) + "'"); };
  if (text.empty()) throw bad();
  auto dot = text.find('.');
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw bad();
  if (frac.size() > kDigits) throw bad();
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits(whole) || !digits(frac)) throw bad();
  if (dot != std::string_view::npos && frac.empty()) throw bad();
  std::int64_t w = 0;
  if (!whole.empty()) {
    if (whole.size() > 12) throw bad();
    std::from_chars(whole.data(), whole.data() + whole.size(), w);
  }
  std::int64_t f = 0;
  for (std::size_t i = 0; i < kDigits; ++i) f = f * 10 + (i < frac.size() ? frac[i] - '0' : 0);
  return from_units(w * kScale + f);
}

std::string Weight::to_string() const {
  std::string out = std::to_string(units_ / kScale);
  std::int64_t f = units_ % kScale;
  if (f == 0) return out;
  std::string frac = std::to_string(f);
  frac.insert(0, kDigits - frac.size(), '0');
  while (frac.back() == '0') frac.pop_back();
  return out + "." + frac;
}

// ---- Builder ------------------------------------------------------------

NodeId SignedDigraph::Builder::add_node(std::string name) {
  if (name.empty()) return add_node();
  auto it = by_name_.find(name);
  if (it != by_name_.end()) return it->second;
  auto id = static_cast<NodeId>(names_.size());
  by_name_.emplace(name, id);
  names_.push_back(std::move(name));
  return id;
}

NodeId SignedDigraph::Builder::add_node() {
  names_.emplace_back();
  return static_cast<NodeId>(names_.size() - 1);
}

void SignedDigraph::Builder::ensure_nodes(std::size_t n) {
  while (names_.size() < n) names_.emplace_back();
}

std::optional<NodeId> SignedDigraph::Builder::find_node(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void SignedDigraph::Builder::add_arc(NodeId src, NodeId dst, Sign label, Weight weight, bool critical) {
  if (weight < Weight{}) throw DomainError("negative arc weight");
  ensure_nodes(std::max<std::size_t>(src, dst) + 1);
  arcs_.push_back(Arc{src, dst, label, weight, critical});
}

SignedDigraph SignedDigraph::Builder::build() && {
  auto key = [](const Arc& a) { return std::tuple(a.src, a.dst, -to_int(a.label)); };
  std::stable_sort(arcs_.begin(), arcs_.end(), [&](const Arc& a, const Arc& b) { return key(a) < key(b); });
  std::vector<Arc> merged;
  merged.reserve(arcs_.size());
  for (const Arc& a : arcs_) {
    if (!merged.empty() && key(merged.back()) == key(a)) {
      merged.back().critical = merged.back().critical || a.critical;
      merged.back().weight = std::min(merged.back().weight, a.weight);
    } else {
      merged.push_back(a);
    }
  }
  SignedDigraph g;
  g.names_ = std::move(names_);
  g.by_name_ = std::move(by_name_);
  g.arcs_ = std::move(merged);
  g.index();
  return g;
}

// ---- SignedDigraph ------------------------------------------------------

void SignedDigraph::index() {
  const std::size_t n = names_.size();
  out_begin_.assign(n + 1, 0);
  in_begin_.assign(n + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_begin_[a.src + 1];
    ++in_begin_[a.dst + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_begin_[i + 1] += out_begin_[i];
    in_begin_[i + 1] += in_begin_[i];
  }
  out_ids_.resize(arcs_.size());
  in_ids_.resize(arcs_.size());
  // Arcs are sorted by (src, dst, label), so a single pass fills both lists in
  // sorted order: out-lists by (dst, label), in-lists by (src, label).
  std::vector<std::uint32_t> out_pos(out_begin_.begin(), out_begin_.end() - 1);
  std::vector<std::uint32_t> in_pos(in_begin_.begin(), in_begin_.end() - 1);
  for (ArcId a = 0; a < arcs_.size(); ++a) {
    out_ids_[out_pos[arcs_[a].src]++] = a;
    in_ids_[in_pos[arcs_[a].dst]++] = a;
  }
}

std::string SignedDigraph::name(NodeId u) const {
  return names_[u].empty() ? std::to_string(u) : names_[u];
}

std::optional<NodeId> SignedDigraph::find_node(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArcId> SignedDigraph::find_arc(NodeId src, NodeId dst, Sign label) const {
  if (src >= node_count()) return std::nullopt;
  for (ArcId a : out_arcs(src))
    if (arcs_[a].dst == dst && arcs_[a].label == label) return a;
  return std::nullopt;
}

ArcSet SignedDigraph::all_arcs() const {
  ArcSet s(arcs_.size());
  for (ArcId a = 0; a < s.size(); ++a) s[a] = a;
  return s;
}

ArcSet SignedDigraph::critical_arcs() const {
  ArcSet s;
  for (ArcId a = 0; a < arcs_.size(); ++a)
    if (arcs_[a].critical) s.push_back(a);
  return s;
}

SignedDigraph SignedDigraph::with_arcs(std::span<const ArcId> kept) const {
  SignedDigraph g;
  g.names_ = names_;
  g.by_name_ = by_name_;
  g.arcs_.reserve(kept.size());
  for (ArcId a : kept) {
    if (a >= arcs_.size()) throw ArcNotInGraph(a);
    g.arcs_.push_back(arcs_[a]);
  }
  g.index();
  return g;
}

SignedDigraph SignedDigraph::induced(std::span<const NodeId> nodes, std::vector<ArcId>* arc_map) const {
  std::vector<std::int64_t> local(node_count(), -1);
  SignedDigraph g;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    local[nodes[i]] = static_cast<std::int64_t>(i);
    g.names_.push_back(names_[nodes[i]]);
    if (!names_[nodes[i]].empty()) g.by_name_.emplace(names_[nodes[i]], static_cast<NodeId>(i));
  }
  if (arc_map) arc_map->clear();
  // Nodes are sorted, so walking sources in order keeps the canonical order.
  for (NodeId u : nodes) {
    for (ArcId a : out_arcs(u)) {
      const Arc& arc = arcs_[a];
      if (local[arc.dst] < 0) continue;
      Arc copy = arc;
      copy.src = static_cast<NodeId>(local[arc.src]);
      copy.dst = static_cast<NodeId>(local[arc.dst]);
      g.arcs_.push_back(copy);
      if (arc_map) arc_map->push_back(a);
    }
  }
  g.index();
  return g;
}

SignedDigraph SignedDigraph::reversed() const {
  Builder b;
  b.names_ = names_;
  b.by_name_ = by_name_;
  for (const Arc& a : arcs_) b.add_arc(a.dst, a.src, a.label, a.weight, a.critical);
  return std::move(b).build();
}

SignedDigraph SignedDigraph::without_critical() const {
  SignedDigraph g = *this;
  for (Arc& a : g.arcs_) a.critical = false;
  return g;
}

// ---- arc-set helpers ----------------------------------------------------

ArcSet set_union(std::span<const ArcId> a, std::span<const ArcId> b) {
  ArcSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ArcSet set_difference(std::span<const ArcId> a, std::span<const ArcId> b) {
  ArcSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool is_subset(std::span<const ArcId> a, std::span<const ArcId> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void normalize(ArcSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

Weight total_weight(const SignedDigraph& g, std::span<const ArcId> arcs) {
  Weight w;
  for (ArcId a : arcs) w += g.arc(a).weight;
  return w;
}

}  // namespace tredkit
