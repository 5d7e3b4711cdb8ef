#include "tredkit/closure.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "tredkit/errors.hpp"

namespace tredkit {

namespace {

bool is_active(std::span<const char> active, ArcId a) { return active.empty() || active[a] != 0; }

}  // namespace

// ---- ParityClosure ------------------------------------------------------

bool ParityClosure::contains(NodeId u, NodeId v, Sign p) const {
  return std::binary_search(triples_.begin(), triples_.end(), ParityTriple{u, v, p});
}

ParityClosure parity_closure(const SignedDigraph& g) {
  const std::size_t n = g.node_count();
  std::vector<ParityTriple> out;
  std::vector<char> seen(2 * n);
  std::vector<std::uint32_t> stack;
  for (NodeId u = 0; u < n; ++u) {
    std::fill(seen.begin(), seen.end(), 0);
    seen[2 * u] = 1;
    stack.assign(1, 2 * u);
    while (!stack.empty()) {
      std::uint32_t s = stack.back();
      stack.pop_back();
      NodeId x = s / 2;
      int lay = static_cast<int>(s % 2);
      for (ArcId a : g.out_arcs(x)) {
        std::uint32_t t = 2 * g.arc(a).dst + (lay ^ layer(g.arc(a).label));
        if (!seen[t]) {
          seen[t] = 1;
          stack.push_back(t);
        }
      }
    }
    for (NodeId v = 0; v < n; ++v) {
      if (seen[2 * v]) out.push_back({u, v, Sign::Pos});
      if (seen[2 * v + 1]) out.push_back({u, v, Sign::Neg});
    }
  }
  return ParityClosure(std::move(out));
}

// ---- strong components (iterative Tarjan) -------------------------------

Components strong_components(const SignedDigraph& g, std::span<const char> active) {
  const std::size_t n = g.node_count();
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> index(n, kUnset), low(n, 0);
  std::vector<NodeId> stack;
  std::vector<char> on_stack(n, 0);
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> calls;
  std::vector<std::vector<NodeId>> emitted;
  std::uint32_t counter = 0;

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    calls.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!calls.empty()) {
      Frame& f = calls.back();
      auto outs = g.out_arcs(f.node);
      if (f.next < outs.size()) {
        ArcId a = outs[f.next++];
        if (!is_active(active, a)) continue;
        NodeId w = g.arc(a).dst;
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      NodeId v = f.node;
      calls.pop_back();
      if (!calls.empty()) low[calls.back().node] = std::min(low[calls.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<NodeId> members;
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        emitted.push_back(std::move(members));
      }
    }
  }

  // Tarjan emits sinks first; reverse for a topological numbering.
  Components c;
  c.component_of.assign(n, 0);
  c.members.assign(emitted.rbegin(), emitted.rend());
  for (std::uint32_t i = 0; i < c.members.size(); ++i)
    for (NodeId v : c.members[i]) c.component_of[v] = i;
  return c;
}

// ---- condensation -------------------------------------------------------

Condensation scc_condense(const SignedDigraph& g) {
  Condensation out;
  out.scc = strong_components(g);
  std::map<std::pair<std::uint32_t, std::uint32_t>, CondensationArc> arcs;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    auto cu = out.scc.component_of[arc.src];
    auto cv = out.scc.component_of[arc.dst];
    if (cu == cv) continue;
    auto& ca = arcs[{cu, cv}];
    ca.from = cu;
    ca.to = cv;
    auto& rep = ca.representative[layer(arc.label)];
    // Ids are already in (src, dst, label) order, so strict < keeps the
    // earliest arc among equal weights.
    if (!rep || arc.weight < g.arc(*rep).weight) rep = a;
  }
  out.dag_arcs.reserve(arcs.size());
  for (auto& [key, ca] : arcs) out.dag_arcs.push_back(ca);
  return out;
}

// ---- parity structure ---------------------------------------------------

ComponentParity component_parity(const SignedDigraph& g, const Components& scc, bool label_aware,
                                 std::span<const char> active) {
  const std::size_t n = g.node_count();
  ComponentParity cp;
  cp.absorber.assign(scc.count(), false);
  cp.potential.assign(n, Sign::Pos);
  std::vector<char> seen(n, 0);
  std::vector<NodeId> queue;
  for (std::uint32_t c = 0; c < scc.count(); ++c) {
    NodeId root = scc.members[c].front();
    seen[root] = 1;
    queue.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      NodeId x = queue[head];
      for (ArcId a : g.out_arcs(x)) {
        if (!is_active(active, a)) continue;
        const Arc& arc = g.arc(a);
        if (scc.component_of[arc.dst] != c || seen[arc.dst]) continue;
        seen[arc.dst] = 1;
        cp.potential[arc.dst] = cp.potential[x] * effective_sign(arc, label_aware);
        queue.push_back(arc.dst);
      }
    }
    for (NodeId x : scc.members[c]) {
      for (ArcId a : g.out_arcs(x)) {
        if (!is_active(active, a)) continue;
        const Arc& arc = g.arc(a);
        if (scc.component_of[arc.dst] != c) continue;
        if (cp.potential[x] * effective_sign(arc, label_aware) != cp.potential[arc.dst]) {
          cp.absorber[c] = true;
          break;
        }
      }
      if (cp.absorber[c]) break;
    }
    if (cp.absorber[c])
      for (NodeId x : scc.members[c]) cp.potential[x] = Sign::Pos;
  }
  return cp;
}

ParityClassification classify_parity(const SignedDigraph& g) {
  Components scc = strong_components(g);
  if (scc.count() != 1) throw NotStronglyConnected();
  ComponentParity cp = component_parity(g, scc, true);
  if (!cp.absorber[0]) return {ParityClass::Single, std::nullopt};
  // Every node of a strongly connected double-parity graph lies on a closed
  // walk of parity -1; report the lowest.
  return {ParityClass::Double, NodeId{0}};
}

// ---- closure equality ---------------------------------------------------

namespace {

/// Component-level reachability tokens (component, normalized parity) for
/// every source component, compared chunk by chunk over target components.
bool same_component_reach(const SignedDigraph& g, const Components& scc, const ComponentParity& cp,
                          std::span<const char> active, bool label_aware) {
  const std::size_t k = scc.count();
  struct InterArc {
    std::uint32_t to;
    int flip;  // 1 when the normalized parity is -1
    bool in_kept;
  };
  std::vector<std::vector<InterArc>> out(k);
  bool any_missing = false;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    auto cu = scc.component_of[arc.src], cv = scc.component_of[arc.dst];
    if (cu == cv) continue;
    Sign q = cp.potential[arc.src] * effective_sign(arc, label_aware) * cp.potential[arc.dst];
    bool kept = active[a] != 0;
    any_missing = any_missing || !kept;
    out[cu].push_back({cv, layer(q), kept});
  }
  if (!any_missing) return true;

  constexpr std::size_t kChunk = 4096;
  constexpr std::size_t kWords = kChunk / 64;
  std::vector<std::uint64_t> full, part;
  for (std::size_t lo = 0; lo < k; lo += kChunk) {
    const std::size_t hi = std::min(k, lo + kChunk);
    const std::size_t words = (hi - lo + 63) / 64;
    // Per component: [pos words | neg words].
    full.assign(k * 2 * kWords, 0);
    part.assign(k * 2 * kWords, 0);
    for (std::size_t c = k; c-- > 0;) {
      std::uint64_t* sf = &full[c * 2 * kWords];
      std::uint64_t* sp = &part[c * 2 * kWords];
      for (const InterArc& e : out[c]) {
        if (e.to >= hi) continue;  // topological order: nothing reachable from it lies in the chunk
        const std::uint64_t* tf = &full[e.to * 2 * kWords];
        const std::uint64_t* tp = &part[e.to * 2 * kWords];
        for (std::size_t w = 0; w < words; ++w) {
          for (int lay = 0; lay < 2; ++lay) {
            sf[lay * kWords + w] |= tf[(lay ^ e.flip) * kWords + w];
            if (e.in_kept) sp[lay * kWords + w] |= tp[(lay ^ e.flip) * kWords + w];
          }
        }
      }
      for (std::uint64_t* s : {sf, sp}) {
        if (c >= lo && c < hi) s[(c - lo) / 64] |= std::uint64_t{1} << ((c - lo) % 64);
        if (cp.absorber[c]) {
          for (std::size_t w = 0; w < words; ++w) s[w] = s[kWords + w] = s[w] | s[kWords + w];
        }
      }
      for (std::size_t w = 0; w < words; ++w)
        if (sf[w] != sp[w] || sf[kWords + w] != sp[kWords + w]) return false;
    }
  }
  return true;
}

}  // namespace

bool closure_equal(const SignedDigraph& g, std::span<const ArcId> kept, bool label_aware) {
  std::vector<char> active(g.arc_count(), 0);
  for (ArcId a : kept) {
    if (a >= g.arc_count()) throw ArcNotInGraph(a);
    active[a] = 1;
  }
  Components full = strong_components(g);
  Components part = strong_components(g, active);
  // Kept arcs only refine the partition, so equal counts mean equal partitions.
  if (full.count() != part.count()) return false;
  ComponentParity cp = component_parity(g, full, label_aware);
  if (label_aware) {
    ComponentParity kp = component_parity(g, full, true, active);
    if (kp.absorber != cp.absorber) return false;
  }
  return same_component_reach(g, full, cp, active, label_aware);
}

// ---- ReachProbe ---------------------------------------------------------

ReachProbe::ReachProbe(const SignedDigraph& g)
    : g_(g), fwd_mark_(2 * g.node_count(), 0), bwd_mark_(2 * g.node_count(), 0) {}

bool ReachProbe::reachable(NodeId u, NodeId v, Sign p, bool label_aware, std::span<const char> active,
                           std::optional<ArcId> skip) {
  if (++epoch_ == 0) {
    std::fill(fwd_mark_.begin(), fwd_mark_.end(), 0);
    std::fill(bwd_mark_.begin(), bwd_mark_.end(), 0);
    epoch_ = 1;
  }
  const int want = label_aware ? layer(p) : 0;
  if (u == v && want == 0) return true;
  auto usable = [&](ArcId a) { return is_active(active, a) && (!skip || a != *skip); };
  auto lay_of = [&](ArcId a) { return label_aware ? layer(g_.arc(a).label) : 0; };

  fwd_frontier_.assign(1, 2 * u);
  bwd_frontier_.assign(1, 2 * v);
  fwd_mark_[2 * u] = epoch_;
  bwd_mark_[2 * v] = epoch_;
  while (!fwd_frontier_.empty() && !bwd_frontier_.empty()) {
    next_.clear();
    if (fwd_frontier_.size() <= bwd_frontier_.size()) {
      for (std::uint32_t s : fwd_frontier_) {
        NodeId x = s / 2;
        int a_lay = static_cast<int>(s % 2);
        for (ArcId a : g_.out_arcs(x)) {
          if (!usable(a)) continue;
          std::uint32_t t = 2 * g_.arc(a).dst + (a_lay ^ lay_of(a));
          if (fwd_mark_[t] == epoch_) continue;
          fwd_mark_[t] = epoch_;
          if (bwd_mark_[t ^ static_cast<std::uint32_t>(want)] == epoch_) return true;
          next_.push_back(t);
        }
      }
      fwd_frontier_.swap(next_);
    } else {
      for (std::uint32_t s : bwd_frontier_) {
        NodeId y = s / 2;
        int b_lay = static_cast<int>(s % 2);
        for (ArcId a : g_.in_arcs(y)) {
          if (!usable(a)) continue;
          std::uint32_t t = 2 * g_.arc(a).src + (b_lay ^ lay_of(a));
          if (bwd_mark_[t] == epoch_) continue;
          bwd_mark_[t] = epoch_;
          if (fwd_mark_[t ^ static_cast<std::uint32_t>(want)] == epoch_) return true;
          next_.push_back(t);
        }
      }
      bwd_frontier_.swap(next_);
    }
  }
  return false;
}

}  // namespace tredkit
