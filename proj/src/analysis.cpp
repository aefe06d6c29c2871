#include "latwire/analysis.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "latwire/errors.hpp"
#include "latwire/wiring.hpp"

namespace latwire {

namespace {

Rational pow2_inverse(int e) { return Rational(BigInt(1), BigInt(1) << e); }

void require_spiral_n(int n) {
  if (n < 3 || n > 60) throw std::invalid_argument("spiral analysis needs 3 <= n <= 60, got " + std::to_string(n));
}

std::vector<std::int64_t> structural_sizes(const Reduction& reduction) {
  return subtree_sizes(reduction.tree());
}

// Adds the left deficit at every branch, deepest first, onto the leftmost
// leaf of the left child. Only left masses below a branch grow, so branches
// already fixed stay fixed.
void top_up_left_deficits(const Reduction& reduction, LeafCounts& counts) {
  const auto& tree = reduction.tree();
  const auto order = tree.preorder();
  std::vector<std::int64_t> mass(tree.size(), 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    const auto ch = tree.children(*it);
    if (ch.empty()) {
      mass[v] = 1 + counts[reduction.leaf_span(*it).first];
      continue;
    }
    auto& left = mass[static_cast<std::size_t>(ch[0])];
    const auto right = mass[static_cast<std::size_t>(ch[1])];
    if (right > left) {
      counts[reduction.leaf_span(ch[0]).first] += right - left;
      left = right;
    }
    mass[v] = 1 + left + right;
  }
}

std::int64_t sum(const LeafCounts& counts) { return std::accumulate(counts.begin(), counts.end(), std::int64_t{0}); }

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  return a > max - b ? max : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  const auto max = std::numeric_limits<std::uint64_t>::max();
  if (a == 0 || b == 0) return 0;
  return a > max / b ? max : a * b;
}

// Smallest left share of m at a branch with the given structural sizes.
std::int64_t min_left_share(std::int64_t m, std::int64_t left_size, std::int64_t right_size) {
  // left_size + l >= right_size + (m - l)  <=>  2l >= m + right_size - left_size
  const std::int64_t need = m + right_size - left_size;
  return std::max<std::int64_t>(0, need <= 0 ? 0 : (need + 1) / 2);
}

// Enumerates legal plans in lexicographically descending order.
class PlanEnumerator {
public:
  PlanEnumerator(const Reduction& reduction, std::function<void(const LeafCounts&)> visit)
      : reduction_(reduction), size_(structural_sizes(reduction)), counts_(reduction.leaf_count(), 0),
        visit_(std::move(visit)) {}

  void run(std::int64_t total) {
    assign(reduction_.tree().root(), total, [this] { visit_(counts_); });
  }

private:
  void assign(NodeId v, std::int64_t m, const std::function<void()>& next) {
    const auto ch = reduction_.tree().children(v);
    if (ch.empty()) {
      counts_[reduction_.leaf_span(v).first] = m;
      next();
      return;
    }
    const auto ls = size_[static_cast<std::size_t>(ch[0])];
    const auto rs = size_[static_cast<std::size_t>(ch[1])];
    for (std::int64_t left = m; left >= min_left_share(m, ls, rs); --left) {
      const std::int64_t right = m - left;
      assign(ch[0], left, [&] { assign(ch[1], right, next); });
    }
  }

  const Reduction& reduction_;
  std::vector<std::int64_t> size_;
  LeafCounts counts_;
  std::function<void(const LeafCounts&)> visit_;
};

}  // namespace

int popcount(std::uint64_t x) { return std::popcount(x); }

int leaf_rotations(std::uint64_t leaf) { return popcount(leaf) + 2; }

Rational leaf_cost_upper(std::uint64_t leaf) { return Rational(2 + popcount(leaf) / 2); }

std::vector<std::uint64_t> spiral_leaf_positions(int n) {
  require_spiral_n(n);
  std::vector<std::uint64_t> out{0};
  for (int j = 1; j <= n - 2; ++j) {
    std::uint64_t p = 0;
    for (int i = n - 2 - j; i <= n - 3; ++i) p += std::uint64_t{1} << i;
    out.push_back(p);
  }
  return out;
}

Proportions spiral_plan(int n) {
  require_spiral_n(n);
  if (n > 30) throw std::invalid_argument("spiral_plan materializes 2^(n-2) leaves; n <= 30");
  const std::size_t spiral = std::size_t{1} << (n - 2);
  Proportions plan(kSpiralLeafOffset + spiral, Rational(0));
  plan[0] = Rational(1, 2);
  plan[1] = Rational(1, 4);
  const auto positions = spiral_leaf_positions(n);
  const Rational quarter(1, 4);
  plan[kSpiralLeafOffset + positions[0]] = quarter * Rational(1, 2);
  for (int j = 1; j <= n - 3; ++j) plan[kSpiralLeafOffset + positions[static_cast<std::size_t>(j)]] = quarter * pow2_inverse(j + 1);
  plan[kSpiralLeafOffset + positions.back()] = quarter * pow2_inverse(n - 2);
  return plan;
}

bool proportions_ordered(const Reduction& reduction, const Proportions& plan) {
  if (plan.size() != reduction.leaf_count()) throw std::invalid_argument("plan size does not match leaf count");
  std::vector<Rational> prefix(plan.size() + 1, Rational(0));
  for (std::size_t i = 0; i < plan.size(); ++i) prefix[i + 1] = prefix[i] + plan[i];
  auto mass = [&](NodeId v) {
    const auto [lo, hi] = reduction.leaf_span(v);
    return prefix[hi] - prefix[lo];
  };
  for (NodeId v : reduction.tree().preorder()) {
    const auto ch = reduction.tree().children(v);
    if (ch.size() == 2 && mass(ch[1]) > mass(ch[0])) return false;
  }
  return true;
}

Rational linear_objective(const Proportions& plan, const std::vector<Rational>& cost) {
  if (plan.size() != cost.size()) throw std::invalid_argument("plan and cost sizes differ");
  Rational total(0);
  for (std::size_t i = 0; i < plan.size(); ++i) total += plan[i] * cost[i];
  return total;
}

std::vector<Rational> spiral_cost_bounds(int n) {
  require_spiral_n(n);
  const std::size_t spiral = std::size_t{1} << (n - 2);
  std::vector<Rational> cost(kSpiralLeafOffset, Rational(1));
  for (std::size_t l = 0; l < spiral; ++l) cost.push_back(leaf_cost_upper(l));
  return cost;
}

Rational vsn_sum(int n) {
  require_spiral_n(n);
  Rational v = 1 + Rational(2 + (n - 2) / 2) * pow2_inverse(n);
  for (int j = 1; j <= n - 3; ++j) v += Rational(2 + j / 2) * pow2_inverse(j + 3);
  return v;
}

Rational vsn_closed_form(int n) {
  require_spiral_n(n);
  return Rational(4, 3) - Rational(2 + (n - 1) / 2 - n / 2) * pow2_inverse(n);
}

RecurrenceTable recurrence_table(int n_max) {
  if (n_max < 1) throw std::invalid_argument("recurrence_table needs n_max >= 1");
  RecurrenceTable t;
  t.bound = {Rational(1), Rational(1)};
  t.refined = {Rational(1), Rational(1)};
  const Rational half(1, 2), quarter(1, 4);
  for (int n = 2; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    t.bound.push_back(Rational(7, 12) + half * t.bound[i - 1] + quarter * t.bound[i - 2]);
    const Rational spiral = n >= 3 ? vsn_sum(n) : Rational(4, 3);
    t.refined.push_back(half * (t.refined[i - 1] - 1) + quarter * (t.refined[i - 2] - 1) + spiral);
  }
  return t;
}

LeafCounts legalizing_base(const Reduction& reduction) {
  LeafCounts counts(reduction.leaf_count(), 0);
  top_up_left_deficits(reduction, counts);
  return counts;
}

LeafCounts realize_plan(const Reduction& reduction, const Proportions& plan, std::int64_t total) {
  if (plan.size() != reduction.leaf_count()) throw std::invalid_argument("plan size does not match leaf count");
  Rational mass(0);
  for (const auto& s : plan) {
    if (s < 0 || s > 1) throw std::invalid_argument("proportions must lie in [0, 1]");
    mass += s;
  }
  if (mass != 1) throw std::invalid_argument("proportions must sum to 1");
  if (total < 0) throw std::invalid_argument("negative subdivision total");

  auto scaled = [&](std::int64_t n) {
    LeafCounts counts(plan.size(), 0);
    for (std::size_t i = 0; i < plan.size(); ++i) {
      const BigInt q = boost::multiprecision::numerator(plan[i]) * n / boost::multiprecision::denominator(plan[i]);
      counts[i] = q.convert_to<std::int64_t>();
    }
    std::int64_t rest = n - sum(counts);
    for (std::size_t i = 0; i < plan.size() && rest > 0; ++i)
      if (plan[i] > 0) {
        ++counts[i];
        --rest;
      }
    top_up_left_deficits(reduction, counts);
    return counts;
  };

  std::int64_t target = total;
  LeafCounts counts = scaled(target);
  while (sum(counts) > total) {
    if (target == 0)
      throw NoLegalPlanError("no legal plan with " + std::to_string(total) + " subdivisions; the legalizing base needs " +
                             std::to_string(sum(counts)));
    target = std::max<std::int64_t>(0, target - (sum(counts) - total));
    counts = scaled(target);
  }
  counts.front() += total - sum(counts);
  return counts;
}

OrderedTree analysis_tree(const Reduction& reduction, const LeafCounts& counts) {
  return with_stem(subdivide(reduction, counts));
}

std::int64_t analysis_volume(const Reduction& reduction, const LeafCounts& counts) {
  return volume(wire(analysis_tree(reduction, counts)));
}

Rational marginal_volume(const Reduction& reduction, std::size_t leaf, const LeafCounts& base) {
  if (leaf >= reduction.leaf_count()) throw std::invalid_argument("leaf index out of range");
  LeafCounts bumped = base;
  ++bumped[leaf];
  return Rational(analysis_volume(reduction, bumped) - analysis_volume(reduction, base));
}

std::vector<LeafCost> spiral_leaf_costs(int n, const LeafCounts& base) {
  require_spiral_n(n);
  const Reduction reduction = reduce(generate_sn(n));
  if (!satisfies_size_ordering(reduction, base)) throw OrderingError("base plan violates the size-ordering");
  std::vector<LeafCost> out;
  for (std::size_t l = 0; l + kSpiralLeafOffset < reduction.leaf_count(); ++l) {
    LeafCost c;
    c.leaf_index = l;
    c.rotations = leaf_rotations(l);
    c.v_upper = leaf_cost_upper(l);
    LeafCounts bumped = base;
    ++bumped[l + kSpiralLeafOffset];
    if (satisfies_size_ordering(reduction, bumped)) c.v_empirical = marginal_volume(reduction, l + kSpiralLeafOffset, base);
    out.push_back(std::move(c));
  }
  return out;
}

std::uint64_t count_legal_plans(const Reduction& reduction, std::int64_t total) {
  if (total < 0) return 0;
  const auto& tree = reduction.tree();
  const auto size = structural_sizes(reduction);
  const auto width = static_cast<std::size_t>(total) + 1;
  std::vector<std::vector<std::uint64_t>> ways(tree.size());
  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& w = ways[static_cast<std::size_t>(*it)];
    const auto ch = tree.children(*it);
    if (ch.empty()) {
      w.assign(width, 1);
      continue;
    }
    w.assign(width, 0);
    const auto& wl = ways[static_cast<std::size_t>(ch[0])];
    const auto& wr = ways[static_cast<std::size_t>(ch[1])];
    const auto ls = size[static_cast<std::size_t>(ch[0])];
    const auto rs = size[static_cast<std::size_t>(ch[1])];
    for (std::int64_t m = 0; m <= total; ++m)
      for (std::int64_t left = min_left_share(m, ls, rs); left <= m; ++left)
        w[static_cast<std::size_t>(m)] =
            sat_add(w[static_cast<std::size_t>(m)], sat_mul(wl[static_cast<std::size_t>(left)], wr[static_cast<std::size_t>(m - left)]));
  }
  return ways[static_cast<std::size_t>(tree.root())][static_cast<std::size_t>(total)];
}

RatioEstimate estimate_vr(const Reduction& reduction, std::int64_t total, SearchStrategy strategy, std::uint64_t budget) {
  if (total < 0) throw std::invalid_argument("negative subdivision total");
  RatioEstimate best;
  best.total = total;
  best.vertices = static_cast<std::int64_t>(reduction.size()) + 1 + total;

  if (strategy == SearchStrategy::exhaustive) {
    const auto plans = count_legal_plans(reduction, total);
    if (plans == 0) throw NoLegalPlanError("no legal plan with " + std::to_string(total) + " subdivisions");
    if (plans > budget)
      throw BudgetError(std::to_string(plans) + " legal plans exceed the budget of " + std::to_string(budget) +
                        "; use the greedy strategy");
    best.volume = -1;
    PlanEnumerator(reduction, [&](const LeafCounts& plan) {
      ++best.plans_examined;
      const auto v = analysis_volume(reduction, plan);
      if (v > best.volume || (v == best.volume && plan > best.plan)) {
        best.volume = v;
        best.plan = plan;
      }
    }).run(total);
  } else {
    LeafCounts plan = legalizing_base(reduction);
    if (sum(plan) > total)
      throw NoLegalPlanError("no legal plan with " + std::to_string(total) + " subdivisions; the legalizing base needs " +
                             std::to_string(sum(plan)));
    std::int64_t current = analysis_volume(reduction, plan);
    ++best.plans_examined;
    for (std::int64_t step = sum(plan); step < total; ++step) {
      std::int64_t best_gain = std::numeric_limits<std::int64_t>::min();
      std::size_t pick = 0;
      for (std::size_t i = 0; i < plan.size(); ++i) {
        ++plan[i];
        if (satisfies_size_ordering(reduction, plan)) {
          const auto gain = analysis_volume(reduction, plan) - current;
          ++best.plans_examined;
          if (gain > best_gain) {
            best_gain = gain;
            pick = i;
          }
        }
        --plan[i];
      }
      ++plan[pick];
      current += best_gain;
    }
    best.plan = plan;
    best.volume = current;
  }
  best.ratio = Rational(best.volume, best.vertices);
  return best;
}

LeafCounts leaf_only_normalize(const Reduction& reduction, const EdgeCounts& counts) {
  const auto& tree = reduction.tree();
  if (counts.size() != tree.size()) throw std::invalid_argument("edge plan size mismatch");
  LeafCounts out(reduction.leaf_count(), 0);
  if (tree.size() == 1) {
    out[0] = counts[0];
    return out;
  }
  if (counts[0] != 0) throw std::invalid_argument("the root of a reduction has no incoming edge to subdivide");
  for (NodeId v = 1; v < static_cast<NodeId>(tree.size()); ++v)
    out[reduction.leaf_span(v).first] += counts[static_cast<std::size_t>(v)];
  return out;
}

}  // namespace latwire
