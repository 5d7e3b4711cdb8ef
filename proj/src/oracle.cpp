#include "tredkit/oracle.hpp"

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "tredkit/errors.hpp"

namespace tredkit {

namespace {

// Deliberately naive: one DFS per start node over the doubled graph,
// closure rows as bitmasks over states 2v + layer.
class SubsetClosure {
 public:
  SubsetClosure(const SignedDigraph& g, bool label_aware) : g_(g), aware_(label_aware), adj_(g.node_count()) {}

  std::vector<std::uint64_t> rows(const std::vector<ArcId>& arcs) {
    for (auto& l : adj_) l.clear();
    for (ArcId a : arcs) adj_[g_.arc(a).src].push_back(a);
    const std::size_t n = g_.node_count();
    std::vector<std::uint64_t> out(n, 0);
    std::vector<std::uint32_t> stack;
    for (NodeId u = 0; u < n; ++u) {
      std::uint64_t seen = std::uint64_t{1} << (2 * u);
      stack.assign(1, 2 * u);
      while (!stack.empty()) {
        std::uint32_t s = stack.back();
        stack.pop_back();
        for (ArcId a : adj_[s / 2]) {
          const Arc& arc = g_.arc(a);
          int lay = static_cast<int>(s % 2) ^ (aware_ && arc.label == Sign::Neg ? 1 : 0);
          std::uint32_t t = 2 * arc.dst + static_cast<std::uint32_t>(lay);
          if (!(seen >> t & 1)) {
            seen |= std::uint64_t{1} << t;
            stack.push_back(t);
          }
        }
      }
      out[u] = seen;
    }
    return out;
  }

 private:
  const SignedDigraph& g_;
  bool aware_;
  std::vector<std::vector<ArcId>> adj_;
};

std::string tag(bool label_aware, bool weighted) {
  return std::string("oracle") + (label_aware ? "-btr" : "-ed") + (weighted ? "-weighted" : "");
}

}  // namespace

ReductionResult exact_min(const SignedDigraph& g, bool label_aware, bool weighted) {
  if (g.node_count() > kOracleNodeLimit) throw TooLarge(std::to_string(g.node_count()) + " nodes");
  std::vector<ArcId> forced, free;
  for (ArcId a = 0; a < g.arc_count(); ++a) (g.arc(a).critical ? forced : free).push_back(a);
  if (free.size() > kOracleFreeArcBudget) throw TooLarge(std::to_string(free.size()) + " non-critical arcs");

  SubsetClosure closure(g, label_aware);
  const auto target = closure.rows(g.all_arcs());
  std::vector<ArcId> subset;
  auto build = [&](auto&& pick) {
    subset = forced;
    pick(subset);
    normalize(subset);
    return closure.rows(subset) == target;
  };

  if (!weighted) {
    const std::size_t f = free.size();
    for (std::size_t k = 0; k <= f; ++k) {
      std::vector<std::size_t> idx(k);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        if (build([&](std::vector<ArcId>& s) {
              for (auto i : idx) s.push_back(free[i]);
            })) {
          ReductionResult r = finish_result(g, subset, tag(label_aware, false), label_aware);
          r.proposal = r.kept;
          r.stats.lower_bound = r.kept.size();
          return r;
        }
        // Next k-combination in lexicographic order.
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == f - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  } else {
    std::optional<std::vector<ArcId>> best;
    Weight best_w;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
      if (!build([&](std::vector<ArcId>& s) {
            for (std::size_t i = 0; i < free.size(); ++i)
              if (mask >> i & 1) s.push_back(free[i]);
          }))
        continue;
      Weight w = total_weight(g, subset);
      if (!best || w < best_w || (w == best_w && (subset.size() < best->size() ||
                                                  (subset.size() == best->size() && subset < *best)))) {
        best = subset;
        best_w = w;
      }
    }
    ReductionResult r = finish_result(g, *best, tag(label_aware, true), label_aware);
    r.proposal = r.kept;
    return r;
  }
  // The full arc set always preserves the closure.
  throw Error("oracle enumeration exhausted");
}

std::size_t exact_max_deletions(const SignedDigraph& g, bool label_aware) {
  return g.arc_count() - exact_min(g, label_aware).kept.size();
}

}  // namespace tredkit
