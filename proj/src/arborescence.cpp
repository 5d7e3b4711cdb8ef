#include "tredkit/arborescence.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>

#include "tredkit/errors.hpp"

namespace tredkit {

ArcSet Arborescence::arcs() const {
  ArcSet out;
  for (const auto& a : parent_arc)
    if (a) out.push_back(*a);
  normalize(out);
  return out;
}

namespace detail {

namespace {

/// Leftist heap of arcs keyed by (reduced weight, arc index) with a lazy
/// additive offset per subtree.
class ArcHeaps {
 public:
  explicit ArcHeaps(std::span<const BranchArc> arcs) : nodes_(arcs.size()) {
    for (std::size_t i = 0; i < arcs.size(); ++i) nodes_[i].weight = arcs[i].weight;
  }

  int merge(int a, int b) {
    if (a < 0) return b;
    if (b < 0) return a;
    push(a);
    push(b);
    if (less(b, a)) std::swap(a, b);
    nodes_[a].right = merge(nodes_[a].right, b);
    if (rank(nodes_[a].left) < rank(nodes_[a].right)) std::swap(nodes_[a].left, nodes_[a].right);
    nodes_[a].rank = rank(nodes_[a].right) + 1;
    return a;
  }
  std::int64_t top_weight(int h) {
    push(h);
    return nodes_[h].weight;
  }
  int pop(int h) {
    push(h);
    return merge(nodes_[h].left, nodes_[h].right);
  }
  void add(int h, std::int64_t delta) {
    if (h >= 0) nodes_[h].lazy += delta;
  }

 private:
  struct Node {
    std::int64_t weight = 0;
    std::int64_t lazy = 0;
    int left = -1;
    int right = -1;
    int rank = 1;
  };
  std::vector<Node> nodes_;

  int rank(int h) const { return h < 0 ? 0 : nodes_[h].rank; }
  bool less(int a, int b) const {
    return std::tie(nodes_[a].weight, a) < std::tie(nodes_[b].weight, b);
  }
  void push(int h) {
    Node& x = nodes_[h];
    if (x.lazy == 0) return;
    x.weight += x.lazy;
    if (x.left >= 0) nodes_[x.left].lazy += x.lazy;
    if (x.right >= 0) nodes_[x.right].lazy += x.lazy;
    x.lazy = 0;
  }
};

class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::uint32_t find(std::uint32_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  std::size_t time() const { return history_.size(); }
  /// Returns false when already joined.
  bool join(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size(a) < size(b)) std::swap(a, b);
    history_.push_back(b);
    parent_[b] = a;
    sizes_[a] += sizes_[b];
    return true;
  }
  void rollback(std::size_t t) {
    while (history_.size() > t) {
      std::uint32_t b = history_.back();
      history_.pop_back();
      sizes_[parent_[b]] -= sizes_[b];
      parent_[b] = b;
    }
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> history_;
  std::vector<std::uint32_t> sizes_ = std::vector<std::uint32_t>(parent_.size(), 1);
  std::uint32_t size(std::uint32_t x) const { return sizes_[x]; }
};

void check_reachable(std::size_t n, std::uint32_t root, std::span<const BranchArc> arcs) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& a : arcs) adj[a.from].push_back(a.to);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> queue{root};
  seen[root] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (auto v : adj[queue[h]])
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) throw Unreachable(v);
}

}  // namespace

std::vector<std::int64_t> min_branching(std::size_t n, std::uint32_t root, std::span<const BranchArc> arcs) {
  check_reachable(n, root, arcs);
  ArcHeaps heaps(arcs);
  std::vector<int> heap(n, -1);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const auto& a = arcs[i];
    if (a.from == a.to || a.to == root) continue;
    heap[a.to] = heaps.merge(heap[a.to], static_cast<int>(i));
  }

  RollbackUnionFind uf(n);
  std::vector<std::int64_t> seen(n, -1), chosen(n, -1);
  std::vector<std::uint32_t> path(n);
  std::vector<std::int64_t> queue(n);
  struct Cycle {
    std::uint32_t node;
    std::size_t time;
    std::vector<std::int64_t> arcs;
  };
  std::deque<Cycle> cycles;
  seen[root] = root;

  for (std::uint32_t s = 0; s < n; ++s) {
    std::uint32_t u = s;
    std::size_t qi = 0;
    while (seen[u] < 0) {
      // Cheapest arc entering u from outside its contracted set.
      int h = heap[u];
      while (h >= 0 && uf.find(arcs[h].from) == u) h = heaps.pop(h);
      if (h < 0) throw Unreachable(u);
      std::int64_t w = heaps.top_weight(h);
      heap[u] = heaps.pop(h);
      heaps.add(heap[u], -w);  // reduced weights relative to the chosen arc
      queue[qi] = h;
      path[qi++] = u;
      seen[u] = s;
      u = uf.find(arcs[h].from);
      if (seen[u] == static_cast<std::int64_t>(s)) {
        int merged = -1;
        std::size_t end = qi, t = uf.time();
        std::uint32_t w_node;
        do {
          w_node = path[--qi];
          merged = heaps.merge(merged, heap[w_node]);
        } while (uf.join(u, w_node));
        u = uf.find(u);
        heap[u] = merged;
        seen[u] = -1;
        cycles.push_front({u, t, std::vector<std::int64_t>(queue.begin() + qi, queue.begin() + end)});
      }
    }
    for (std::size_t i = 0; i < qi; ++i) chosen[uf.find(arcs[queue[i]].to)] = queue[i];
  }

  // Expand mega-nodes in reverse order of contraction; inside each cycle the
  // arc that would double up on the entry node is dropped.
  for (auto& c : cycles) {
    uf.rollback(c.time);
    std::int64_t entering = chosen[c.node];
    for (std::int64_t a : c.arcs) chosen[uf.find(arcs[a].to)] = a;
    chosen[uf.find(arcs[entering].to)] = entering;
  }
  chosen[root] = -1;
  return chosen;
}

}  // namespace detail

namespace {

Arborescence assemble(const SignedDigraph& g, NodeId root, Orientation o, std::span<const ArcId> order,
                      std::span<const Weight> weights) {
  if (root >= g.node_count()) throw DomainError("root out of range");
  if (!weights.empty() && weights.size() != g.arc_count()) throw DomainError("weight vector size mismatch");
  auto weight_of = [&](ArcId a) { return weights.empty() ? g.arc(a).weight : weights[a]; };
  std::vector<detail::BranchArc> list;
  std::vector<ArcId> back;
  list.reserve(order.size());
  for (ArcId a : order) {
    const Arc& arc = g.arc(a);
    if (arc.is_loop()) continue;
    if (o == Orientation::Out)
      list.push_back({arc.src, arc.dst, weight_of(a).units()});
    else
      list.push_back({arc.dst, arc.src, weight_of(a).units()});
    back.push_back(a);
  }
  auto chosen = detail::min_branching(g.node_count(), root, list);
  Arborescence t;
  t.root = root;
  t.orientation = o;
  t.parent_arc.resize(g.node_count());
  for (std::size_t v = 0; v < chosen.size(); ++v) {
    if (chosen[v] < 0) continue;
    ArcId a = back[static_cast<std::size_t>(chosen[v])];
    t.parent_arc[v] = a;
    t.total_weight += weight_of(a);
  }
  return t;
}

}  // namespace

Arborescence min_out_arborescence(const SignedDigraph& g, NodeId root) {
  return min_out_arborescence(g, root, {});
}

Arborescence min_out_arborescence(const SignedDigraph& g, NodeId root, std::span<const Weight> weights) {
  ArcSet order = g.all_arcs();
  return assemble(g, root, Orientation::Out, order, weights);
}

Arborescence min_in_arborescence(const SignedDigraph& g, NodeId root) {
  return min_in_arborescence(g, root, {});
}

Arborescence min_in_arborescence(const SignedDigraph& g, NodeId root, std::span<const Weight> weights) {
  // Canonical order of the reversed graph: (dst, src, label) of the originals.
  ArcSet order = g.all_arcs();
  std::stable_sort(order.begin(), order.end(), [&](ArcId a, ArcId b) {
    const Arc &x = g.arc(a), &y = g.arc(b);
    return std::tuple(x.dst, x.src, -to_int(x.label)) < std::tuple(y.dst, y.src, -to_int(y.label));
  });
  return assemble(g, root, Orientation::In, order, weights);
}

}  // namespace tredkit
