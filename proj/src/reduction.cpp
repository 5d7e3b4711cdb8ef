#include "tredkit/reduction.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "tredkit/closure.hpp"
#include "tredkit/errors.hpp"

namespace tredkit {

namespace {

ArcSet from_mask(std::span<const char> mask) {
  ArcSet s;
  for (ArcId a = 0; a < mask.size(); ++a)
    if (mask[a]) s.push_back(a);
  return s;
}

}  // namespace

ReductionResult finish_result(const SignedDigraph& g, ArcSet kept, std::string algorithm, bool label_aware) {
  normalize(kept);
  ReductionResult r;
  r.deleted = set_difference(g.all_arcs(), kept);
  r.kept = std::move(kept);
  r.algorithm = std::move(algorithm);
  r.label_aware = label_aware;
  r.verified = closure_equal(g, r.kept, label_aware) && is_subset(g.critical_arcs(), r.kept);
  r.kept_weight = total_weight(g, r.kept);
  r.stats.kept_count = r.kept.size();
  r.stats.total_count = g.arc_count();
  r.stats.redundancy =
      g.arc_count() == 0 ? 0.0 : 1.0 - static_cast<double>(r.kept.size()) / static_cast<double>(g.arc_count());
  return r;
}

// ---- DAG ----------------------------------------------------------------

ReductionResult dag_reduce(const SignedDigraph& g, bool label_aware) {
  Components scc = strong_components(g);
  if (scc.count() != g.node_count()) throw NotAcyclic();
  for (const Arc& a : g.arcs())
    if (a.is_loop()) throw NotAcyclic();

  // Components of a DAG are singletons numbered topologically.
  std::vector<NodeId> by_position(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) by_position[scc.component_of[v]] = v;

  // Arcs are dropped one at a time, each check against the survivors.
  ReachProbe probe(g);
  std::vector<char> alive(g.arc_count(), 1);
  ArcSet kept;
  for (std::size_t i = g.node_count(); i-- > 0;) {
    NodeId u = by_position[i];
    auto outs = g.out_arcs(u);
    std::vector<ArcId> order(outs.begin(), outs.end());
    std::sort(order.begin(), order.end(), [&](ArcId a, ArcId b) {
      return scc.component_of[g.arc(a).dst] > scc.component_of[g.arc(b).dst];
    });
    for (ArcId a : order) {
      const Arc& arc = g.arc(a);
      if (arc.critical || !probe.reachable(arc.src, arc.dst, arc.label, label_aware, alive, a))
        kept.push_back(a);
      else
        alive[a] = 0;
    }
  }
  ReductionResult r = finish_result(g, std::move(kept), "dag", label_aware);
  r.proposal = r.kept;
  return r;
}

// ---- inter-component arcs -----------------------------------------------

ArcSet inter_component_arcs(const SignedDigraph& g, bool label_aware) {
  Components scc = strong_components(g);
  ComponentParity cp = component_parity(g, scc, label_aware);

  // Code 2: an endpoint component absorbs parity, so the arc's own parity
  // is irrelevant.
  struct Group {
    std::uint32_t from, to;
    int code;
    ArcId rep;
    bool forced = false;
  };
  std::map<std::tuple<std::uint32_t, std::uint32_t, int>, std::size_t> index;
  std::vector<Group> groups;
  ArcSet out;
  auto better = [&](ArcId a, ArcId b) {
    const Arc &x = g.arc(a), &y = g.arc(b);
    return std::tuple(!x.critical, x.weight, a) < std::tuple(!y.critical, y.weight, b);
  };
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    auto cu = scc.component_of[arc.src], cv = scc.component_of[arc.dst];
    if (cu == cv) continue;
    if (arc.critical) out.push_back(a);
    int code = 2;
    if (!cp.absorber[cu] && !cp.absorber[cv])
      code = layer(cp.potential[arc.src] * effective_sign(arc, label_aware) * cp.potential[arc.dst]);
    auto [it, fresh] = index.try_emplace({cu, cv, code}, groups.size());
    if (fresh) {
      groups.push_back({cu, cv, code, a, arc.critical});
    } else {
      Group& grp = groups[it->second];
      grp.forced = grp.forced || arc.critical;
      if (better(a, grp.rep)) grp.rep = a;
    }
  }

  const std::size_t k = scc.count();
  std::vector<std::vector<std::size_t>> outgoing(k);
  for (std::size_t i = 0; i < groups.size(); ++i) outgoing[groups[i].from].push_back(i);

  // Alternate-walk search on (component, parity layer) states, skipping one
  // group and never leaving the topological window [from, to].
  std::vector<std::uint32_t> mark(2 * k, 0);
  std::uint32_t epoch = 0;
  std::vector<std::uint32_t> stack;
  auto has_alternative = [&](std::size_t skip) {
    const Group& grp = groups[skip];
    ++epoch;
    stack.clear();
    auto visit = [&](std::uint32_t c, int lay) {
      for (int l : {lay, 1 - lay}) {
        if (mark[2 * c + l] != epoch) {
          mark[2 * c + l] = epoch;
          stack.push_back(2 * c + l);
        }
        if (!cp.absorber[c]) break;
      }
    };
    visit(grp.from, 0);
    while (!stack.empty()) {
      std::uint32_t s = stack.back();
      stack.pop_back();
      std::uint32_t c = s / 2;
      int lay = static_cast<int>(s % 2);
      for (std::size_t gi : outgoing[c]) {
        if (gi == skip) continue;
        const Group& e = groups[gi];
        if (e.to > grp.to) continue;
        visit(e.to, e.code == 2 ? lay : lay ^ e.code);
      }
    }
    if (grp.code == 2) return mark[2 * grp.to] == epoch || mark[2 * grp.to + 1] == epoch;
    return mark[2 * grp.to + grp.code] == epoch;
  };

  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].forced) continue;
    if (!has_alternative(i)) out.push_back(groups[i].rep);
  }
  normalize(out);
  return out;
}

ArcSet singleton_arcs(const SignedDigraph& g, NodeId u, bool label_aware) {
  ArcSet out;
  for (ArcId a : g.out_arcs(u)) {
    const Arc& arc = g.arc(a);
    if (!arc.is_loop()) continue;
    if (arc.critical || (label_aware && arc.label == Sign::Neg)) out.push_back(a);
  }
  return out;
}

// ---- pipeline -----------------------------------------------------------

ReductionResult decompose_solve_combine(const SignedDigraph& g, const SccSolver& solver, bool label_aware,
                                        std::string algorithm) {
  Components scc = strong_components(g);
  std::vector<char> mask(g.arc_count(), 0);
  std::vector<ArcId> local_to_global;
  for (const auto& members : scc.members) {
    if (members.size() == 1) {
      for (ArcId a : singleton_arcs(g, members.front(), label_aware)) mask[a] = 1;
      continue;
    }
    SignedDigraph sub = g.induced(members, &local_to_global);
    for (ArcId a : solver(sub, members)) mask[local_to_global.at(a)] = 1;
  }
  for (ArcId a : inter_component_arcs(g, label_aware)) mask[a] = 1;
  for (ArcId a : g.critical_arcs()) mask[a] = 1;
  ArcSet proposal = from_mask(mask);
  ReductionResult r = finish_result(g, verify_repair(g, proposal, label_aware), std::move(algorithm), label_aware);
  r.proposal = std::move(proposal);
  return r;
}

// ---- parity augmentation ------------------------------------------------

AugmentResult parity_augment(const SignedDigraph& g, std::span<const ArcId> kept) {
  AugmentResult out{ArcSet(kept.begin(), kept.end()), std::nullopt};
  normalize(out.kept);
  if (classify_parity(g).kind == ParityClass::Single) return out;

  // Node labels along a spanning out-arborescence of the kept arcs (BFS tree
  // rooted at node 0).
  const std::size_t n = g.node_count();
  std::vector<char> in_kept(g.arc_count(), 0);
  for (ArcId a : out.kept) {
    if (a >= g.arc_count()) throw ArcNotInGraph(a);
    in_kept[a] = 1;
  }
  std::vector<Sign> label(n, Sign::Pos);
  std::vector<char> seen(n, 0);
  std::vector<NodeId> queue{0};
  seen[0] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (ArcId a : g.out_arcs(queue[h])) {
      const Arc& arc = g.arc(a);
      if (!in_kept[a] || seen[arc.dst]) continue;
      seen[arc.dst] = 1;
      label[arc.dst] = label[arc.src] * arc.label;
      queue.push_back(arc.dst);
    }
  }
  if (queue.size() != n) throw NoArborescence();

  auto violates = [&](ArcId a) {
    const Arc& arc = g.arc(a);
    return label[arc.src] * label[arc.dst] != arc.label;
  };
  for (ArcId a : out.kept)
    if (violates(a)) return out;  // kept arcs already close a negative cycle
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    if (violates(a)) {
      out.kept = set_union(out.kept, ArcSet{a});
      out.added = a;
      return out;
    }
  }
  throw MissingWitness();
}

// ---- verify and repair --------------------------------------------------

ArcSet verify_repair(const SignedDigraph& g, std::span<const ArcId> kept, bool label_aware) {
  std::vector<char> mask(g.arc_count(), 0);
  for (ArcId a : kept) {
    if (a >= g.arc_count()) throw ArcNotInGraph(a);
    mask[a] = 1;
  }
  for (ArcId a : g.critical_arcs()) mask[a] = 1;

  auto cheaper = [&](ArcId a, ArcId b) { return std::tuple(g.arc(a).weight, a) < std::tuple(g.arc(b).weight, b); };
  std::vector<ArcId> order = from_mask(mask);
  std::sort(order.begin(), order.end(), cheaper);

  ReachProbe probe(g);
  if (!closure_equal(g, from_mask(mask), label_aware)) {
    std::vector<ArcId> missing;
    for (ArcId a = 0; a < g.arc_count(); ++a)
      if (!mask[a]) missing.push_back(a);
    std::sort(missing.begin(), missing.end(), cheaper);
    for (ArcId a : missing) {
      const Arc& arc = g.arc(a);
      if (!probe.reachable(arc.src, arc.dst, arc.label, label_aware, mask)) {
        mask[a] = 1;
        order.push_back(a);
      }
    }
  }

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Arc& arc = g.arc(*it);
    if (arc.critical) continue;
    if (probe.reachable(arc.src, arc.dst, arc.label, label_aware, mask, *it)) mask[*it] = 0;
  }
  return from_mask(mask);
}

}  // namespace tredkit
