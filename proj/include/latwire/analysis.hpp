#pragma once

// Volume-per-vertex analysis of the placement over subdivisions of a fixed
// reduction R: the spiral family S_n, its leaf costs, and the V(n) recurrence.
//
// Trees "of shape R" are built as with_stem(subdivide(R, plan)): the analysis
// assumes the root handed to the placement has a single child, and that stem
// is exactly what makes rotated leaves pay for their connectors.

#include <cstdint>
#include <optional>
#include <vector>

#include "latwire/rational.hpp"
#include "latwire/tree.hpp"

namespace latwire {

/// Number of ones in the binary expansion of x.
int popcount(std::uint64_t x);

/// Quarter turns applied to spiral leaf l of S_n: popcount(l) + 2.
int leaf_rotations(std::uint64_t leaf);

/// Upper bound on the volume per subdivision of spiral leaf l: 2 + floor(popcount(l) / 2).
Rational leaf_cost_upper(std::uint64_t leaf);

/// Spiral leaves that receive mass: 0 followed by p_1..p_{n-2},
/// p_j = 2^(n-2-j) + ... + 2^(n-3). Requires n >= 3.
std::vector<std::uint64_t> spiral_leaf_positions(int n);

/// Leaves of reduce(S_n) are the two path leaves followed by the spiral leaves.
inline constexpr std::size_t kSpiralLeafOffset = 2;

using Proportions = std::vector<Rational>;

/// Proportions over the leaves of reduce(S_n): 1/2 and 1/4 on the path leaves,
/// the remaining quarter split 1/2, 1/4, ..., 1/2^(n-3), 1/2^(n-2) over
/// spiral_leaf_positions(n). Requires n >= 3.
Proportions spiral_plan(int n);

/// Left proportion >= right proportion at every branch (structural vertices ignored).
bool proportions_ordered(const Reduction& reduction, const Proportions& plan);

/// sum_i plan[i] * cost[i].
Rational linear_objective(const Proportions& plan, const std::vector<Rational>& cost);

/// Per-leaf cost vector for reduce(S_n): 1 on the path leaves, leaf_cost_upper on spiral leaves.
std::vector<Rational> spiral_cost_bounds(int n);

/// 1 + (2 + floor((n-2)/2)) / 2^n + sum_{j=1}^{n-3} (2 + floor(j/2)) / 2^(j+3). Requires n >= 3.
Rational vsn_sum(int n);

/// 4/3 - (2 + floor((n-1)/2) - floor(n/2)) / 2^n. Requires n >= 3.
/// Not equal to vsn_sum; both are reported side by side.
Rational vsn_closed_form(int n);

struct RecurrenceTable {
  /// V(n) = 7/12 + V(n-1)/2 + V(n-2)/4 with V(0) = V(1) = 1.
  std::vector<Rational> bound;
  /// V(n) = (V(n-1) - 1)/2 + (V(n-2) - 1)/4 + vsn_sum(n), with 4/3 standing in for the spiral at n = 2.
  std::vector<Rational> refined;
};

RecurrenceTable recurrence_table(int n_max);

/// Smallest additions that make the all-zero plan legal: every branch whose
/// right side outweighs its left gets the difference on its leftmost leaf.
LeafCounts legalizing_base(const Reduction& reduction);

/// Integer plan with exactly `total` subdivisions that follows `plan`: scale,
/// hand remainders to the leftmost leaves, top up left deficits, and put any
/// leftover on the leftmost leaf. Throws NoLegalPlanError if `total` is below
/// the legalizing base.
LeafCounts realize_plan(const Reduction& reduction, const Proportions& plan, std::int64_t total);

/// with_stem(subdivide(R, counts)).
OrderedTree analysis_tree(const Reduction& reduction, const LeafCounts& counts);
std::int64_t analysis_volume(const Reduction& reduction, const LeafCounts& counts);

/// Volume gained by one more subdivision on `leaf` on top of `base`.
/// Throws OrderingError if either plan is illegal.
Rational marginal_volume(const Reduction& reduction, std::size_t leaf, const LeafCounts& base);

struct LeafCost {
  std::size_t leaf_index = 0;  // spiral numbering 0..2^(n-2)-1
  int rotations = 0;
  Rational v_upper;
  /// Marginal volume at the given base; empty when one more subdivision is illegal there.
  std::optional<Rational> v_empirical;
};

/// Cost table of every spiral leaf of reduce(S_n) at `base`.
std::vector<LeafCost> spiral_leaf_costs(int n, const LeafCounts& base);

struct RatioEstimate {
  LeafCounts plan;
  std::int64_t total = 0;
  std::int64_t volume = 0;
  std::int64_t vertices = 0;
  Rational ratio;
  std::uint64_t plans_examined = 0;
};

enum class SearchStrategy { exhaustive, greedy };

inline constexpr std::uint64_t kDefaultPlanBudget = 2'000'000;

/// Legal leaf plans with the given total, saturating at UINT64_MAX.
std::uint64_t count_legal_plans(const Reduction& reduction, std::int64_t total);

/// Best vol/|Gamma| over legal plans with `total` subdivisions. Exhaustive
/// returns the true maximum (ties go to the lexicographically largest plan,
/// i.e. mass furthest left) and throws BudgetError past `budget` plans.
/// Greedy grows the legalizing base one subdivision at a time on the leaf with
/// the largest marginal volume, leftmost on ties.
RatioEstimate estimate_vr(const Reduction& reduction, std::int64_t total, SearchStrategy strategy,
                          std::uint64_t budget = kDefaultPlanBudget);

/// Moves every internal-edge subdivision to the leftmost leaf below that edge.
LeafCounts leaf_only_normalize(const Reduction& reduction, const EdgeCounts& counts);

}  // namespace latwire
