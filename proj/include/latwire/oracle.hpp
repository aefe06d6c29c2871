#pragma once

// Brute-force ground truth for small instances, kept independent of the
// placement engine: its own recursive construction, plan enumeration, and
// volume count.

#include <cstdint>

#include "latwire/analysis.hpp"
#include "latwire/tree.hpp"
#include "latwire/wiring.hpp"

namespace latwire {

inline constexpr int kOracleVertexLimit = 7;
inline constexpr std::uint64_t kDefaultSearchBudget = 500'000'000;

struct OracleOptions {
  /// Search grid is [-w, w]^2. Non-positive selects volume(wire(tree)) - 1,
  /// which contains every wiring cheaper than the constructive one.
  std::int64_t box_half_width = 0;
  std::uint64_t budget = kDefaultSearchBudget;
  int vertex_limit = kOracleVertexLimit;
  /// Start from the constructive wiring as the incumbent. When false the
  /// search starts empty and has to find every wiring it reports itself.
  bool seed_with_construction = true;
};

struct OracleResult {
  std::int64_t best_volume = 0;
  GridWiring witness;
  std::uint64_t explored = 0;
  std::int64_t box_half_width = 0;
  std::uint64_t budget = 0;
};

/// Minimum-volume 1-wiring by branch and bound over vertex placements and
/// simple edge routes. The root is pinned at the origin and the first route
/// starts upward (rotations are symmetries). Throws BudgetError when the
/// search would visit more than `budget` nodes, std::invalid_argument above
/// the vertex limit.
OracleResult optimal_wiring(const OrderedTree& tree, const OracleOptions& options = {});

/// The recursive placement written out step by step: wire each child
/// subtree, copy it, lift or turn and shift it, and draw the connector.
/// Quadratic in depth; meant for small trees.
GridWiring reference_wire(const OrderedTree& tree);

/// Every way to put `total` subdivisions on the leaves of R, filtered by the
/// placement's own size ordering on the built tree, scored with
/// reference_wire on the stemmed tree. Ties go to the lexicographically
/// largest plan. Throws BudgetError or NoLegalPlanError.
RatioEstimate exhaustive_vr(const Reduction& reduction, std::int64_t total,
                            std::uint64_t budget = kDefaultPlanBudget);

}  // namespace latwire
