#include "tredkit/lp_bounds.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <string>

#include "tredkit/arborescence.hpp"
#include "tredkit/closure.hpp"
#include "tredkit/errors.hpp"
#include "tredkit/oracle.hpp"

namespace tredkit {

namespace {

constexpr std::array<std::pair<std::string_view, LpVariant::Kind>, 3> kVariantNames{{
    {"min-ed", LpVariant::MinEd},
    {"critical-min-ed", LpVariant::CriticalMinEd},
    {"arborescence", LpVariant::RootedArborescence},
}};

Rational ratio(std::int64_t num, std::int64_t den) {
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

Rational to_rational(Weight w) { return ratio(w.units(), Weight::kScale); }

using Words = std::vector<std::uint64_t>;

bool words_subset(const Words& a, const Words& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

std::size_t popcount(const Words& w) {
  std::size_t c = 0;
  for (auto x : w) c += static_cast<std::size_t>(__builtin_popcountll(x));
  return c;
}

/// max c^T y  s.t.  A y <= b, y >= 0, with b >= 0. Dense tableau over the
/// structural columns plus one slack per row; Bland's rule.
struct DualSimplex {
  std::vector<std::vector<Rational>> t;  // rows x (cols + rows)
  std::vector<Rational> rhs;
  std::vector<Rational> reduced;  // per column: c_B B^-1 A_j - c_j
  std::vector<std::size_t> basis;
  Rational value;

  DualSimplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b, const std::vector<Rational>& c)
      : t(std::move(a)), rhs(std::move(b)) {
    const std::size_t rows = t.size(), cols = c.size();
    for (std::size_t i = 0; i < rows; ++i) {
      t[i].resize(cols + rows);
      t[i][cols + i] = 1;
      basis.push_back(cols + i);
    }
    reduced.assign(cols + rows, Rational(0));
    for (std::size_t j = 0; j < cols; ++j) reduced[j] = -c[j];
    value = 0;
  }

  /// False when unbounded.
  bool run() {
    const std::size_t rows = t.size(), width = reduced.size();
    while (true) {
      std::size_t enter = width;
      for (std::size_t j = 0; j < width; ++j)
        if (sgn(reduced[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == width) return true;
      std::size_t leave = rows;
      Rational best;
      for (std::size_t i = 0; i < rows; ++i) {
        if (sgn(t[i][enter]) <= 0) continue;
        Rational ratio = rhs[i] / t[i][enter];
        if (leave == rows || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t rows = t.size(), width = reduced.size();
    Rational p = t[r][c];
    for (std::size_t j = 0; j < width; ++j)
      if (sgn(t[r][j]) != 0) t[r][j] /= p;
    rhs[r] /= p;
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < width; ++j)
      if (sgn(t[r][j]) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(t[i][c]) == 0) continue;
      Rational f = t[i][c];
      for (std::size_t j : nz) t[i][j] -= f * t[r][j];
      rhs[i] -= f * rhs[r];
    }
    if (sgn(reduced[c]) != 0) {
      Rational f = reduced[c];
      for (std::size_t j : nz) reduced[j] -= f * t[r][j];
      value -= f * rhs[r];
    }
    basis[r] = c;
  }
};

}  // namespace

std::string_view variant_name(LpVariant::Kind kind) {
  for (const auto& [n, k] : kVariantNames)
    if (k == kind) return n;
  return "?";
}

std::optional<LpVariant::Kind> parse_variant(std::string_view name) {
  for (const auto& [n, k] : kVariantNames)
    if (n == name) return k;
  return std::nullopt;
}

CutSet cut_set(const SignedDigraph& g, NodeMask subset) {
  CutSet c;
  c.subset = subset;
  auto inside = [&](NodeId v) { return (subset >> v & 1) != 0; };
  for (ArcId a = 0; a < g.arc_count(); ++a) {
    const Arc& arc = g.arc(a);
    if (!inside(arc.src) && inside(arc.dst)) c.into.push_back(a);
    if (inside(arc.src) && !inside(arc.dst)) c.out_of.push_back(a);
  }
  return c;
}

LpSolution solve_lp_small(const SignedDigraph& g, LpVariant variant) {
  const std::size_t n = g.node_count(), m = g.arc_count();
  if (n > kLpNodeLimit) throw TooLarge(std::to_string(n) + " nodes for the cut LP");
  if (variant.kind == LpVariant::RootedArborescence && variant.root >= n) throw DomainError("root out of range");

  // Distinct cut rows, each remembered by its lowest subset.
  const std::size_t words = (m + 63) / 64;
  std::map<Words, NodeMask> unique;
  const NodeMask full = n == 0 ? 0 : static_cast<NodeMask>((std::uint64_t{1} << n) - 1);
  for (NodeMask u = 1; u < full; ++u) {
    if (variant.kind == LpVariant::RootedArborescence && (u >> variant.root & 1)) continue;
    Words row(words, 0);
    bool any = false;
    for (ArcId a = 0; a < m; ++a) {
      const Arc& arc = g.arc(a);
      if (!(u >> arc.src & 1) && (u >> arc.dst & 1)) {
        row[a / 64] |= std::uint64_t{1} << (a % 64);
        any = true;
      }
    }
    if (!any) throw Infeasible();
    unique.try_emplace(std::move(row), u);
  }
  std::vector<std::pair<Words, NodeMask>> cuts(unique.begin(), unique.end());
  // A superset row is implied by any of its subsets.
  if (cuts.size() <= 4096) {
    std::stable_sort(cuts.begin(), cuts.end(),
                     [](const auto& a, const auto& b) { return popcount(a.first) < popcount(b.first); });
    std::vector<std::pair<Words, NodeMask>> kept;
    for (auto& c : cuts) {
      bool implied = std::any_of(kept.begin(), kept.end(), [&](const auto& k) { return words_subset(k.first, c.first); });
      if (!implied) kept.push_back(std::move(c));
    }
    cuts = std::move(kept);
  }
  std::sort(cuts.begin(), cuts.end(), [](const auto& a, const auto& b) { return a.second < b.second; });

  ArcSet critical;
  if (variant.kind == LpVariant::CriticalMinEd) critical = g.critical_arcs();

  // Dual: max sum y_U + sum z_e  s.t.  for each arc e:
  //   sum_{U : e in into(U)} y_U + z_e <= w_e.
  const std::size_t cols = cuts.size() + critical.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(cols));
  for (std::size_t j = 0; j < cuts.size(); ++j)
    for (ArcId e = 0; e < m; ++e)
      if (cuts[j].first[e / 64] >> (e % 64) & 1) a[e][j] = 1;
  for (std::size_t k = 0; k < critical.size(); ++k) a[critical[k]][cuts.size() + k] = 1;
  std::vector<Rational> b(m);
  for (ArcId e = 0; e < m; ++e)
    b[e] = variant.kind == LpVariant::RootedArborescence ? to_rational(g.arc(e).weight) : Rational(1);
  DualSimplex simplex(std::move(a), b, std::vector<Rational>(cols, Rational(1)));
  if (!simplex.run()) throw Infeasible();

  LpSolution s;
  s.objective = simplex.value;
  s.x.resize(m);
  s.integral = true;
  for (ArcId e = 0; e < m; ++e) {
    Rational x = simplex.reduced[cols + e];
    // Values above 1 only occur on zero-weight arcs; capping keeps the cost.
    if (x > 1) x = 1;
    s.x[e] = x;
    if (x.get_den() != 1) s.integral = false;
  }
  std::vector<Rational> y(cols);
  for (std::size_t i = 0; i < simplex.basis.size(); ++i)
    if (simplex.basis[i] < cols) y[simplex.basis[i]] = simplex.rhs[i];
  for (std::size_t j = 0; j < cuts.size(); ++j)
    if (sgn(y[j]) != 0) s.dual_y.emplace_back(cuts[j].second, y[j]);
  return s;
}

Rational integrality_gap(const SignedDigraph& g, LpVariant variant) {
  if (g.node_count() > kGapNodeLimit) throw TooLarge(std::to_string(g.node_count()) + " nodes for the gap");
  LpSolution lp = solve_lp_small(g, variant);
  Rational integral;
  switch (variant.kind) {
    case LpVariant::MinEd:
      integral = static_cast<long>(exact_min(g.without_critical(), false).kept.size());
      break;
    case LpVariant::CriticalMinEd:
      integral = static_cast<long>(exact_min(g, false).kept.size());
      break;
    case LpVariant::RootedArborescence:
      integral = to_rational(min_out_arborescence(g, variant.root).total_weight);
      break;
  }
  if (sgn(lp.objective) == 0) {
    if (sgn(integral) != 0) throw DomainError("zero fractional optimum with a positive integral one");
    return Rational(1);
  }
  return integral / lp.objective;
}

MatchingBound matching_lower_bound(const SignedDigraph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw DomainError("matching bound needs at least two nodes");
  if (strong_components(g).count() != 1) throw NotStronglyConnected();

  // Hopcroft-Karp: left = tail copies, right = head copies.
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> match_left(n, kNone), match_right(n, kNone);
  std::vector<ArcId> left_arc(n, kNone);
  std::vector<std::uint32_t> dist(n);
  auto bfs = [&] {
    std::vector<NodeId> queue;
    bool found = false;
    for (NodeId u = 0; u < n; ++u) {
      if (match_left[u] == kNone) {
        dist[u] = 0;
        queue.push_back(u);
      } else {
        dist[u] = kNone;
      }
    }
    for (std::size_t h = 0; h < queue.size(); ++h) {
      NodeId u = queue[h];
      for (ArcId a : g.out_arcs(u)) {
        NodeId v = g.arc(a).dst;
        if (v == u) continue;
        NodeId w = match_right[v];
        if (w == kNone) {
          found = true;
        } else if (dist[w] == kNone) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found;
  };
  auto dfs = [&](auto&& self, NodeId u) -> bool {
    for (ArcId a : g.out_arcs(u)) {
      NodeId v = g.arc(a).dst;
      if (v == u) continue;
      NodeId w = match_right[v];
      if (w == kNone || (dist[w] == dist[u] + 1 && self(self, w))) {
        match_left[u] = v;
        match_right[v] = u;
        left_arc[u] = a;
        return true;
      }
    }
    dist[u] = kNone;
    return false;
  };
  std::size_t matched = 0;
  while (bfs())
    for (NodeId u = 0; u < n; ++u)
      if (match_left[u] == kNone && dfs(dfs, u)) ++matched;

  MatchingBound r;
  r.matching_size = matched;
  for (NodeId u = 0; u < n; ++u)
    if (match_left[u] != kNone) r.a1.push_back(left_arc[u]);
  // Each uncovered slot takes its first non-loop arc; the far end of that arc
  // is matched, otherwise the matching could grow.
  for (NodeId u = 0; u < n; ++u) {
    if (match_left[u] != kNone) continue;
    for (ArcId a : g.out_arcs(u))
      if (!g.arc(a).is_loop()) {
        r.a1.push_back(a);
        break;
      }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (match_right[v] != kNone) continue;
    for (ArcId a : g.in_arcs(v))
      if (!g.arc(a).is_loop()) {
        r.a1.push_back(a);
        break;
      }
  }
  normalize(r.a1);
  r.bound = r.a1.size();
  return r;
}

RatioReport ratio_report(std::int64_t total_arcs, std::int64_t opt_kept, std::int64_t alg_kept) {
  if (opt_kept <= 0 || opt_kept > alg_kept || alg_kept > total_arcs)
    throw DomainError("ratio_report needs 0 < opt_kept <= alg_kept <= total_arcs");
  RatioReport r;
  r.min_ratio = ratio(alg_kept, opt_kept);
  if (alg_kept == opt_kept) {
    r.max_ratio = Rational(1);
  } else if (alg_kept < total_arcs) {
    r.max_ratio = ratio(total_arcs - opt_kept, total_arcs - alg_kept);
  }
  return r;
}

}  // namespace tredkit
