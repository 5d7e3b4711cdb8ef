#pragma once

#include <cstddef>

#include "tredkit/graph.hpp"
#include "tredkit/reduction.hpp"

namespace tredkit {

/// Largest |E \ D| the brute-force oracle accepts.
inline constexpr std::size_t kOracleFreeArcBudget = 24;
/// Largest node count the oracle accepts (closure rows are 64-bit masks over
/// the doubled node set).
inline constexpr std::size_t kOracleNodeLimit = 32;

/// Exact optimum by enumerating arc subsets that contain every critical arc.
/// Unweighted: subsets by increasing size, then lexicographic arc order; the
/// first closure-preserving one wins. Weighted: the minimum total weight over
/// all closure-preserving subsets, ties by size then lexicographic order.
/// Throws TooLarge past the budgets above.
ReductionResult exact_min(const SignedDigraph& g, bool label_aware, bool weighted = false);

/// |E| - |exact_min(g).kept|.
std::size_t exact_max_deletions(const SignedDigraph& g, bool label_aware);

}  // namespace tredkit
