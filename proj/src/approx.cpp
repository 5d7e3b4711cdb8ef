#include "tredkit/approx.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <utility>

#include "tredkit/arborescence.hpp"
#include "tredkit/closure.hpp"
#include "tredkit/errors.hpp"
#include "tredkit/lp_bounds.hpp"

namespace tredkit {

namespace {

constexpr std::array<std::pair<std::string_view, SolverKind>, 6> kSolverNames{{
    {"dag", SolverKind::Dag},
    {"fj", SolverKind::Fj},
    {"critical2", SolverKind::Critical2},
    {"kry", SolverKind::Kry},
    {"maxed2", SolverKind::MaxEd2},
    {"btr", SolverKind::Btr},
}};

void require_strong(const SignedDigraph& g) {
  if (strong_components(g).count() != 1) throw NotStronglyConnected();
}

ArcSet from_mask(std::span<const char> mask) {
  ArcSet s;
  for (ArcId a = 0; a < mask.size(); ++a)
    if (mask[a]) s.push_back(a);
  return s;
}

ReductionResult finish_blind(const SignedDigraph& g, ArcSet proposal, std::string tag) {
  proposal = set_union(proposal, g.critical_arcs());
  ReductionResult r = finish_result(g, verify_repair(g, proposal, false), std::move(tag), false);
  r.proposal = std::move(proposal);
  return r;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  NodeId find(NodeId x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // The smaller root survives, so a representative is its set's minimum.
  void join(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<NodeId> parent_;
};

/// Contracted label-blind multigraph: out[r] lists (target representative,
/// lowest original arc id) for each representative r.
using SuperAdjacency = std::vector<std::vector<std::pair<NodeId, ArcId>>>;

SuperAdjacency contract(const SignedDigraph& g, UnionFind& uf) {
  std::map<std::pair<NodeId, NodeId>, ArcId> lowest;
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    NodeId ru = uf.find(arc.src), rv = uf.find(arc.dst);
    if (ru != rv) lowest.try_emplace({ru, rv}, a);
  }
  SuperAdjacency out(g.node_count());
  for (const auto& [key, a] : lowest) out[key.first].emplace_back(key.second, a);
  return out;
}

/// Finds a cycle of at least `len` arcs: a simple path of len - 1 arcs from
/// s, then a shortest return to s avoiding the path.
class CycleFinder {
 public:
  CycleFinder(const SuperAdjacency& out, std::size_t budget)
      : out_(out), budget_(budget), on_path_(out.size(), 0), mark_(out.size(), 0), parent_(out.size()) {}

  std::optional<std::vector<ArcId>> find(std::size_t len) {
    spent_ = 0;
    for (NodeId s = 0; s < out_.size(); ++s) {
      if (out_[s].empty()) continue;
      if (auto c = from(s, len)) return c;
    }
    return std::nullopt;
  }

 private:
  const SuperAdjacency& out_;
  std::size_t budget_;
  std::size_t spent_ = 0;
  std::vector<char> on_path_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::vector<std::pair<NodeId, ArcId>> parent_;

  void spend() {
    if (++spent_ > budget_) throw CycleSearchBudgetExceeded();
  }

  std::optional<std::vector<ArcId>> from(NodeId s, std::size_t len) {
    std::vector<std::pair<NodeId, std::size_t>> stack{{s, 0}};
    std::vector<ArcId> arcs;
    on_path_[s] = 1;
    std::optional<std::vector<ArcId>> found;
    while (!stack.empty() && !found) {
      NodeId x = stack.back().first;
      if (stack.size() == len) {
        if (auto back = return_path(x, s)) {
          found = arcs;
          found->insert(found->end(), back->begin(), back->end());
          break;
        }
        on_path_[x] = 0;
        stack.pop_back();
        arcs.pop_back();
        continue;
      }
      std::size_t& idx = stack.back().second;
      if (idx == out_[x].size()) {
        on_path_[x] = 0;
        stack.pop_back();
        if (!arcs.empty()) arcs.pop_back();
        continue;
      }
      auto [y, a] = out_[x][idx++];
      if (on_path_[y]) continue;
      spend();
      on_path_[y] = 1;
      arcs.push_back(a);
      stack.emplace_back(y, 0);
    }
    for (const auto& [x, idx] : stack) on_path_[x] = 0;
    return found;
  }

  std::optional<std::vector<ArcId>> return_path(NodeId x, NodeId s) {
    ++epoch_;
    std::vector<NodeId> queue{x};
    mark_[x] = epoch_;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      NodeId y = queue[h];
      for (auto [z, a] : out_[y]) {
        if (z == s) {
          std::vector<ArcId> path{a};
          for (NodeId w = y; w != x; w = parent_[w].first) path.push_back(parent_[w].second);
          std::reverse(path.begin(), path.end());
          return path;
        }
        if (on_path_[z] || mark_[z] == epoch_) continue;
        spend();
        mark_[z] = epoch_;
        parent_[z] = {y, a};
        queue.push_back(z);
      }
    }
    return std::nullopt;
  }
};

ReductionResult solve_component(const SignedDigraph& sub, SolverKind kind, const SolverOptions& opts) {
  switch (kind) {
    case SolverKind::Fj:
      return fj_weighted_min_ed(sub);
    case SolverKind::Critical2:
      return critical_min_ed_2approx(sub);
    case SolverKind::Kry:
      return kry_contract(sub, opts.kry_c, opts.cycle_budget);
    case SolverKind::MaxEd2:
      return critical_max_ed_2approx(sub);
    default:
      throw DomainError("solver " + std::string(solver_name(kind)) + " cannot solve a strong component");
  }
}

}  // namespace

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (const auto& [n, k] : kSolverNames)
    if (n == name) return k;
  return std::nullopt;
}

std::string_view solver_name(SolverKind kind) {
  for (const auto& [n, k] : kSolverNames)
    if (k == kind) return n;
  return "?";
}

ReductionResult fj_weighted_min_ed(const SignedDigraph& g) {
  require_strong(g);
  ArcSet a = set_union(min_in_arborescence(g, 0).arcs(), min_out_arborescence(g, 0).arcs());
  return finish_blind(g, std::move(a), "fj");
}

ReductionResult critical_min_ed_2approx(const SignedDigraph& g) {
  require_strong(g);
  std::vector<Weight> w(g.arc_count(), kUnitWeight);
  for (ArcId a : g.critical_arcs()) w[a] = Weight{0};
  ArcSet a1 = min_in_arborescence(g, 0, w).arcs();
  for (ArcId a : a1) w[a] = Weight{0};
  ArcSet a2 = min_out_arborescence(g, 0, w).arcs();
  return finish_blind(g, set_union(a1, a2), "critical2");
}

ReductionResult kry_contract(const SignedDigraph& g, int c, std::size_t budget) {
  require_strong(g);
  if (c < 3) throw DomainError("cycle length parameter c must be at least 3");
  UnionFind uf(g.node_count());
  std::vector<char> selected(g.arc_count(), 0);
  std::int64_t contractions = 0;
  for (auto len = static_cast<std::size_t>(c); len >= 3; --len) {
    while (true) {
      SuperAdjacency out = contract(g, uf);
      CycleFinder finder(out, budget);
      auto cycle = finder.find(len);
      if (!cycle) break;
      for (ArcId a : *cycle) {
        selected[a] = 1;
        uf.join(g.arc(a).src, g.arc(a).dst);
      }
      ++contractions;
    }
  }
  // Residual: bidirected tree over the contracted nodes, every arc needed.
  for (const auto& list : contract(g, uf))
    for (auto [rv, a] : list) selected[a] = 1;
  ReductionResult r = finish_blind(g, from_mask(selected), "kry");
  r.diagnostics.emplace_back("contractions", contractions);
  return r;
}

ArcSet PseudonodeTransform::map_back(std::span<const ArcId> arcs) const {
  ArcSet out;
  for (ArcId a : arcs) {
    if (a >= origin.size()) throw ArcNotInGraph(a);
    out.push_back(origin[a]);
  }
  normalize(out);
  return out;
}

PseudonodeTransform pseudonode_transform(const SignedDigraph& g) {
  SignedDigraph::Builder b;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.has_name(v))
      b.add_node(g.name(v));
    else
      b.add_node();
  }
  std::vector<ArcId> split;  // fresh node n + i stands for critical arc split[i]
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    if (!arc.critical) {
      b.add_arc(arc);
      continue;
    }
    NodeId x = b.add_node();
    split.push_back(a);
    b.add_arc(arc.src, x, Sign::Pos, arc.weight, false);
    b.add_arc(x, arc.dst, arc.label, arc.weight, false);
  }
  PseudonodeTransform t;
  t.graph = std::move(b).build();
  const NodeId n = static_cast<NodeId>(g.node_count());
  t.origin.resize(t.graph.arc_count());
  t.is_half.resize(t.graph.arc_count(), 0);
  for (ArcId a = 0; a < t.graph.arc_count(); ++a) {
    const Arc& arc = t.graph.arc(a);
    if (arc.src >= n) {
      t.origin[a] = split[arc.src - n];
      t.is_half[a] = 1;
    } else if (arc.dst >= n) {
      t.origin[a] = split[arc.dst - n];
      t.is_half[a] = 1;
    } else {
      t.origin[a] = *g.find_arc(arc.src, arc.dst, arc.label);
    }
  }
  return t;
}

ReductionResult critical_max_ed_2approx(const SignedDigraph& g) {
  require_strong(g);
  const std::size_t m = g.arc_count();
  std::vector<char> necessary(m, 0);
  ReachProbe probe(g);
  for (ArcId a = 0; a < m; ++a) {
    const Arc& arc = g.arc(a);
    if (arc.critical) {
      necessary[a] = 1;
    } else if (!arc.is_loop() && !probe.reachable(arc.src, arc.dst, Sign::Pos, false, {}, a)) {
      necessary[a] = 1;
    }
  }
  ArcSet f = from_mask(necessary);
  if (closure_equal(g, f, false)) {
    ReductionResult r = finish_blind(g, f, "maxed2");
    r.diagnostics.emplace_back("necessary", static_cast<std::int64_t>(f.size()));
    return r;
  }

  // Contract the strong components of (V, F).
  Components fc = strong_components(g, necessary);
  const std::size_t k = fc.count();
  std::vector<char> f_enters(k, 0);
  std::vector<detail::BranchArc> list;
  std::vector<ArcId> back;
  for (ArcId a = 0; a < m; ++a) {
    const Arc& arc = g.arc(a);
    auto cu = fc.component_of[arc.src], cv = fc.component_of[arc.dst];
    if (cu == cv) continue;
    if (necessary[a]) f_enters[cv] = 1;
    list.push_back({cu, cv, necessary[a] ? 0 : 1});
    back.push_back(a);
  }
  std::optional<std::uint32_t> root;
  for (std::uint32_t c = 0; c < k; ++c) {
    if (f_enters[c]) continue;
    if (!root || fc.members[c].front() < fc.members[*root].front()) root = c;
  }

  std::vector<char> in_out(m, 0);
  ArcSet a_out;
  for (auto i : detail::min_branching(k, *root, list)) {
    if (i < 0) continue;
    a_out.push_back(back[static_cast<std::size_t>(i)]);
    in_out[back[static_cast<std::size_t>(i)]] = 1;
  }
  std::vector<detail::BranchArc> reversed;
  reversed.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    ArcId a = back[i];
    reversed.push_back({list[i].to, list[i].from, (necessary[a] || in_out[a]) ? 0 : 1});
  }
  ArcSet a_in;
  for (auto i : detail::min_branching(k, *root, reversed))
    if (i >= 0) a_in.push_back(back[static_cast<std::size_t>(i)]);

  normalize(a_out);
  normalize(a_in);
  ArcSet proposal = set_union(set_union(f, a_out), a_in);
  ReductionResult r = finish_blind(g, std::move(proposal), "maxed2");
  r.diagnostics.emplace_back("necessary", static_cast<std::int64_t>(f.size()));
  r.diagnostics.emplace_back("z", static_cast<std::int64_t>(m - a_out.size()) - 1);
  return r;
}

ReductionResult reduce(const SignedDigraph& g, SolverKind algo, bool label_aware, const SolverOptions& opts) {
  if (algo == SolverKind::Dag) {
    ReductionResult r = dag_reduce(g, label_aware);
    r.stats.lower_bound = r.kept.size();
    return r;
  }
  SolverKind inner = algo;
  std::string tag(solver_name(algo));
  if (algo == SolverKind::Btr) {
    inner = opts.scc_solver;
    label_aware = true;
    if (inner != SolverKind::Critical2) tag += "+" + std::string(solver_name(inner));
  }

  ArcSet augmentation;
  std::map<std::string, std::int64_t> diagnostics;
  SccSolver solver = [&](const SignedDigraph& sub, std::span<const NodeId> members) {
    ReductionResult part = solve_component(sub, inner, opts);
    for (const auto& [key, value] : part.diagnostics) diagnostics[key] += value;
    if (!label_aware) return part.kept;
    AugmentResult aug = parity_augment(sub, part.kept);
    if (aug.added) {
      const Arc& x = sub.arc(*aug.added);
      augmentation.push_back(*g.find_arc(members[x.src], members[x.dst], x.label));
    }
    return aug.kept;
  };
  ReductionResult r = decompose_solve_combine(g, solver, label_aware, tag);
  normalize(augmentation);
  r.augmentation = set_difference(augmentation, set_difference(augmentation, r.kept));
  r.diagnostics.assign(diagnostics.begin(), diagnostics.end());
  r.stats.lower_bound = pipeline_lower_bound(g, label_aware);
  return r;
}

ReductionResult min_btr(const SignedDigraph& g, const SolverOptions& opts) {
  return reduce(g, SolverKind::Btr, true, opts);
}

std::size_t pipeline_lower_bound(const SignedDigraph& g, bool label_aware) {
  Components scc = strong_components(g);
  std::size_t total = inter_component_arcs(g, label_aware).size();
  for (const auto& members : scc.members) {
    if (members.size() == 1) {
      total += singleton_arcs(g, members.front(), label_aware).size();
      continue;
    }
    SignedDigraph sub = g.induced(members);
    total += std::max(matching_lower_bound(sub).bound, sub.critical_arcs().size());
  }
  return total;
}

}  // namespace tredkit
