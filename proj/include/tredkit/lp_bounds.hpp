#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tredkit/graph.hpp"

namespace tredkit {

using Rational = mpq_class;

/// Node subsets are bitmasks (bit v set iff v in U); the LP module handles
/// at most kLpNodeLimit nodes.
using NodeMask = std::uint32_t;
inline constexpr std::size_t kLpNodeLimit = 16;
inline constexpr std::size_t kGapNodeLimit = 12;

struct CutSet {
  NodeMask subset = 0;
  ArcSet into;    // tail outside, head inside
  ArcSet out_of;  // tail inside, head outside
};
CutSet cut_set(const SignedDigraph& g, NodeMask subset);

struct LpVariant {
  enum Kind { MinEd, CriticalMinEd, RootedArborescence };
  Kind kind = MinEd;
  /// RootedArborescence only: subsets containing the root are not cuts.
  NodeId root = 0;

  static LpVariant min_ed() { return {MinEd, 0}; }
  static LpVariant critical_min_ed() { return {CriticalMinEd, 0}; }
  static LpVariant rooted(NodeId r) { return {RootedArborescence, r}; }
};
std::string_view variant_name(LpVariant::Kind kind);
std::optional<LpVariant::Kind> parse_variant(std::string_view name);

struct LpSolution {
  std::vector<Rational> x;  // per arc, in [0, 1]
  Rational objective;
  /// Nonzero cut duals, ascending by subset.
  std::vector<std::pair<NodeMask, Rational>> dual_y;
  bool integral = false;
};

/// Optimal fractional solution of the cut LP: minimize sum w_e x_e subject to
/// x(into(U)) >= 1 for every proper nonempty U (unit weights for MinEd and
/// CriticalMinEd; stored weights and root-free U for RootedArborescence), and
/// x_e >= 1 for critical arcs in CriticalMinEd. Exact rational simplex.
/// Throws TooLarge (n > 16), Infeasible (some cut has no entering arc).
LpSolution solve_lp_small(const SignedDigraph& g, LpVariant variant);

/// Integral optimum / fractional optimum (1 when both are 0). The integral
/// optimum comes from the brute-force oracle, or from the minimum
/// out-arborescence for RootedArborescence. Throws TooLarge (n > 12).
Rational integrality_gap(const SignedDigraph& g, LpVariant variant);

struct MatchingBound {
  std::size_t bound = 0;
  /// Minimum edge cover of the tail/head slots attaining `bound`.
  ArcSet a1;
  std::size_t matching_size = 0;
};

/// Minimum number of arcs giving every node an out-arc and an in-arc:
/// 2n - (maximum matching between tail and head copies). Self-loops are
/// ignored. Throws NotStronglyConnected, DomainError (n < 2).
MatchingBound matching_lower_bound(const SignedDigraph& g);

struct RatioReport {
  Rational min_ratio;
  /// Empty means infinite.
  std::optional<Rational> max_ratio;
};

/// min = alg / opt; max = (total - opt) / (total - alg), and 1 when alg equals
/// opt. Throws DomainError unless 0 < opt <= alg <= total.
RatioReport ratio_report(std::int64_t total_arcs, std::int64_t opt_kept, std::int64_t alg_kept);

}  // namespace tredkit
