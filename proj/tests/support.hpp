#pragma once

// Test-only builders and naive reference implementations. Nothing here calls
// the library's algorithms, so these can serve as independent oracles.

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tredkit/graph.hpp"

namespace testing {

using namespace tredkit;

struct A {
  NodeId src;
  NodeId dst;
  char sign = '+';
  bool critical = false;
  std::int64_t weight = 1;
};

inline SignedDigraph make(std::size_t n, std::initializer_list<A> arcs) {
  SignedDigraph::Builder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node();
  for (const A& a : arcs)
    b.add_arc(a.src, a.dst, a.sign == '-' ? Sign::Neg : Sign::Pos, Weight{a.weight}, a.critical);
  return std::move(b).build();
}

inline SignedDigraph make(std::size_t n, const std::vector<A>& arcs) {
  SignedDigraph::Builder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node();
  for (const A& a : arcs)
    b.add_arc(a.src, a.dst, a.sign == '-' ? Sign::Neg : Sign::Pos, Weight{a.weight}, a.critical);
  return std::move(b).build();
}

inline SignedDigraph cycle(std::size_t n) {
  std::vector<A> arcs;
  for (NodeId i = 0; i < n; ++i) arcs.push_back({i, static_cast<NodeId>((i + 1) % n)});
  return make(n, arcs);
}

/// reach[u][2v + l]: a walk of length >= 0 from u to v with parity layer l.
/// Floyd-Warshall over the doubled graph.
inline std::vector<std::vector<char>> naive_closure(const SignedDigraph& g, const std::vector<ArcId>& arcs,
                                                    bool label_aware) {
  const std::size_t s = 2 * g.node_count();
  std::vector<std::vector<char>> r(s, std::vector<char>(s, 0));
  for (std::size_t i = 0; i < s; ++i) r[i][i] = 1;
  for (ArcId a : arcs) {
    const Arc& arc = g.arc(a);
    int flip = label_aware && arc.label == Sign::Neg ? 1 : 0;
    for (int l = 0; l < 2; ++l) r[2 * arc.src + l][2 * arc.dst + (l ^ flip)] = 1;
  }
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t i = 0; i < s; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < s; ++j)
          if (r[k][j]) r[i][j] = 1;
  // Keep only rows starting in layer 0.
  std::vector<std::vector<char>> out;
  for (std::size_t u = 0; u < g.node_count(); ++u) out.push_back(r[2 * u]);
  return out;
}

inline bool naive_equal(const SignedDigraph& g, const std::vector<ArcId>& kept, bool label_aware) {
  return naive_closure(g, g.all_arcs(), label_aware) == naive_closure(g, kept, label_aware);
}

/// No kept non-critical arc can be dropped without changing the closure.
inline bool naive_irredundant(const SignedDigraph& g, const std::vector<ArcId>& kept, bool label_aware) {
  auto full = naive_closure(g, kept, label_aware);
  for (ArcId a : kept) {
    if (g.arc(a).critical) continue;
    std::vector<ArcId> rest;
    for (ArcId b : kept)
      if (b != a) rest.push_back(b);
    if (naive_closure(g, rest, label_aware) == full) return false;
  }
  return true;
}

inline bool naive_strongly_connected(const SignedDigraph& g) {
  auto c = naive_closure(g, g.all_arcs(), false);
  for (std::size_t u = 0; u < g.node_count(); ++u)
    for (std::size_t v = 0; v < g.node_count(); ++v)
      if (!c[u][2 * v] && !c[u][2 * v + 1]) return false;
  return g.node_count() > 0;
}

/// Minimum out-arborescence weight by trying every parent choice. Empty when
/// none exists.
inline std::optional<std::int64_t> brute_arborescence(const SignedDigraph& g, NodeId root) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<ArcId>> choices(n);
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    if (!arc.is_loop() && arc.dst != root) choices[arc.dst].push_back(a);
  }
  for (NodeId v = 0; v < n; ++v)
    if (v != root && choices[v].empty()) return std::nullopt;
  std::optional<std::int64_t> best;
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::int64_t w = 0;
    bool ok = true;
    for (NodeId v = 0; v < n && ok; ++v) {
      if (v == root) continue;
      w += g.arc(choices[v][pick[v]]).weight.units();
      // Follow parents; must reach the root within n steps.
      NodeId x = v;
      std::size_t steps = 0;
      while (x != root && steps <= n) {
        x = g.arc(choices[x][pick[x]]).src;
        ++steps;
      }
      ok = x == root;
    }
    if (ok && (!best || w < *best)) best = w;
    NodeId v = 0;
    for (; v < n; ++v) {
      if (v == root) continue;
      if (++pick[v] < choices[v].size()) break;
      pick[v] = 0;
    }
    if (v == n) break;
  }
  return best;
}

inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
}

/// Random signed digraph on n nodes: each ordered pair (self-loops included
/// when `loops`) gets an arc with probability p, label '-' with probability
/// neg, critical with probability crit.
inline SignedDigraph random_graph(std::mt19937_64& rng, std::size_t n, double p, double neg, double crit,
                                  bool loops = false, int max_weight = 1) {
  std::bernoulli_distribution has(p), is_neg(neg), is_crit(crit);
  std::vector<A> arcs;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v) {
      if (u == v && !loops) continue;
      if (!has(rng)) continue;
      A a{u, v, is_neg(rng) ? '-' : '+', is_crit(rng), 1};
      if (max_weight > 1) a.weight = 1 + static_cast<std::int64_t>(draw(rng, static_cast<std::uint64_t>(max_weight)));
      arcs.push_back(a);
    }
  return make(n, arcs);
}

inline SignedDigraph random_strong(std::mt19937_64& rng, std::size_t n, double p, double neg, double crit,
                                   int max_weight = 1) {
  while (true) {
    SignedDigraph g = random_graph(rng, n, p, neg, crit, false, max_weight);
    if (naive_strongly_connected(g)) return g;
  }
}

}  // namespace testing
