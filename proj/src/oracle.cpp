#include "latwire/oracle.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "latwire/errors.hpp"

namespace latwire {

namespace {

// Branch and bound over partial wirings on a (2w+1)^2 grid.
class WiringSearch {
public:
  WiringSearch(const OrderedTree& tree, std::int64_t half_width, std::uint64_t budget, std::int64_t incumbent)
      : tree_(tree), hw_(half_width), side_(2 * half_width + 1), budget_(budget), best_(incumbent),
        n_(static_cast<std::int64_t>(tree.size())) {
    const auto cells = static_cast<std::size_t>(side_ * side_);
    cover_.assign(cells, 0);
    owner_.assign(cells, kNoNode);
    horizontal_.assign(cells, 0);
    vertical_.assign(cells, 0);
    for (NodeId v : tree.preorder())
      for (NodeId c : tree.children(v)) edges_.emplace_back(v, c);
    pos_.assign(tree.size(), GridPoint{});
    paths_.resize(edges_.size());
  }

  /// True if a wiring cheaper than the incumbent was found.
  bool run() {
    const auto origin = index({0, 0});
    cover_[origin] = 1;
    owner_[origin] = tree_.root();
    volume_ = 1;
    place(0);
    return improved_;
  }

  std::int64_t best() const { return best_; }
  std::uint64_t explored() const { return explored_; }

  GridWiring witness() const {
    GridWiring w;
    w.vertices = best_pos_;
    for (std::size_t k = 0; k < edges_.size(); ++k)
      w.edges.push_back(EdgePath{edges_[k].first, edges_[k].second, best_paths_[k]});
    std::sort(w.edges.begin(), w.edges.end(), [](const EdgePath& a, const EdgePath& b) { return a.to < b.to; });
    return w;
  }

private:
  static constexpr std::array<GridPoint, 4> kSteps{{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

  std::size_t index(GridPoint p) const { return static_cast<std::size_t>((p.y + hw_) * side_ + (p.x + hw_)); }
  bool inside(GridPoint p) const { return p.x >= -hw_ && p.x <= hw_ && p.y >= -hw_ && p.y <= hw_; }

  // Flag for the unit edge between neighbours a and b.
  std::uint8_t& edge_flag(GridPoint a, GridPoint b) {
    const GridPoint lo = std::min(a, b);
    return a.y == b.y ? horizontal_[index(lo)] : vertical_[index(lo)];
  }

  bool hopeless(std::int64_t volume) const { return std::max(volume, n_) >= best_; }

  void place(std::size_t k) {
    if (hopeless(volume_)) return;
    if (k == edges_.size()) {
      best_ = volume_;
      best_pos_ = pos_;
      best_paths_ = paths_;
      improved_ = true;
      return;
    }
    const GridPoint start = pos_[static_cast<std::size_t>(edges_[k].first)];
    path_.assign(1, start);
    walk(k, start, start);
  }

  void walk(std::size_t k, GridPoint start, GridPoint cur) {
    if (++explored_ > budget_)
      throw BudgetError("wiring search exceeded " + std::to_string(budget_) + " nodes");
    const auto here = index(cur);
    if (cur != start && owner_[here] == kNoNode) {
      const NodeId child = edges_[k].second;
      owner_[here] = child;
      pos_[static_cast<std::size_t>(child)] = cur;
      paths_[k] = path_;
      place(k + 1);
      owner_[here] = kNoNode;
      // place() reuses path_ for later edges; restore this edge's route.
      path_ = paths_[k];
      if (hopeless(volume_)) return;
    }
    for (const GridPoint step : kSteps) {
      if (k == 0 && cur == start && step != kSteps[0]) continue;
      const GridPoint next = cur + step;
      if (!inside(next)) continue;
      const auto there = index(next);
      // Routes are simple; they are short enough for a linear scan.
      if (std::find(path_.begin(), path_.end(), next) != path_.end()) continue;
      auto& used = edge_flag(cur, next);
      if (used) continue;
      const std::int64_t grown = volume_ + (cover_[there] == 0 ? 1 : 0);
      if (hopeless(grown)) continue;
      used = 1;
      ++cover_[there];
      volume_ = grown;
      path_.push_back(next);
      walk(k, start, next);
      path_.pop_back();
      if (--cover_[there] == 0) --volume_;
      edge_flag(cur, next) = 0;
      if (hopeless(volume_)) return;
    }
  }

  const OrderedTree& tree_;
  std::int64_t hw_;
  std::int64_t side_;
  std::uint64_t budget_;
  std::int64_t best_;
  std::int64_t n_;
  std::uint64_t explored_ = 0;
  std::int64_t volume_ = 0;
  bool improved_ = false;

  std::vector<int> cover_;
  std::vector<NodeId> owner_;
  std::vector<std::uint8_t> horizontal_;
  std::vector<std::uint8_t> vertical_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<GridPoint> pos_;
  std::vector<std::vector<GridPoint>> paths_;
  std::vector<GridPoint> path_;
  std::vector<GridPoint> best_pos_;
  std::vector<std::vector<GridPoint>> best_paths_;
};

// --- reference construction -------------------------------------------------

struct PartialWiring {
  std::map<NodeId, GridPoint> at;
  std::vector<EdgePath> edges;

  template <class F>
  void for_each_point(F&& f) {
    for (auto& [v, p] : at) f(p);
    for (auto& e : edges)
      for (auto& p : e.path) f(p);
  }
};

std::int64_t count_below(const OrderedTree& tree, NodeId v) {
  std::int64_t n = 1;
  for (NodeId c : tree.children(v)) n += count_below(tree, c);
  return n;
}

PartialWiring place_subtree(const OrderedTree& tree, NodeId v) {
  PartialWiring f;
  f.at[v] = {0, 0};
  std::vector<NodeId> kids(tree.children(v).begin(), tree.children(v).end());
  if (kids.size() == 2 && count_below(tree, kids[1]) > count_below(tree, kids[0])) std::swap(kids[0], kids[1]);
  for (std::size_t slot = 0; slot < kids.size(); ++slot) {
    PartialWiring g = place_subtree(tree, kids[slot]);
    std::int64_t lowest = 0;
    g.for_each_point([&](GridPoint& p) { lowest = std::min(lowest, p.y); });
    const std::int64_t gap = (lowest < 0 ? -lowest : lowest) + 1;
    if (slot == 0) {
      g.for_each_point([&](GridPoint& p) { p.y += gap; });
    } else {
      g.for_each_point([&](GridPoint& p) {
        const GridPoint turned{p.y, -p.x};
        p = {turned.x + gap, turned.y};
      });
    }
    EdgePath connector{v, kids[slot], {}};
    for (std::int64_t i = 0; i <= gap; ++i) connector.path.push_back(slot == 0 ? GridPoint{0, i} : GridPoint{i, 0});
    f.at.insert(g.at.begin(), g.at.end());
    f.edges.push_back(std::move(connector));
    for (auto& e : g.edges) f.edges.push_back(std::move(e));
  }
  return f;
}

std::uint64_t compositions(std::int64_t total, std::size_t parts) {
  // C(total + parts - 1, parts - 1), saturating.
  long double approx = 1;
  std::uint64_t exact = 1;
  for (std::size_t i = 1; i < parts; ++i) {
    approx = approx * static_cast<long double>(total + static_cast<std::int64_t>(i)) / static_cast<long double>(i);
    if (approx > 1e18L) return std::numeric_limits<std::uint64_t>::max();
    exact = exact * static_cast<std::uint64_t>(total + static_cast<std::int64_t>(i)) / i;
  }
  return exact;
}

// Stem, then R with leaf i hanging below counts[i] extra vertices.
OrderedTree build_stemmed(const Reduction& reduction, const LeafCounts& counts) {
  const auto& r = reduction.tree();
  std::map<NodeId, std::size_t> leaf_index;
  for (std::size_t i = 0; i < reduction.leaf_count(); ++i) leaf_index[reduction.leaves()[i]] = i;
  OrderedTree g;
  const NodeId top = g.add_child(g.root());
  std::vector<std::pair<NodeId, NodeId>> todo;  // (R node, output node standing for it)
  if (r.size() == 1) {
    NodeId cur = top;
    for (std::int64_t i = 0; i < counts[0]; ++i) cur = g.add_child(cur);
    return g;
  }
  todo.emplace_back(r.root(), top);
  while (!todo.empty()) {
    const auto [src, dst] = todo.back();
    todo.pop_back();
    for (NodeId c : r.children(src)) {
      NodeId cur = dst;
      if (const auto it = leaf_index.find(c); it != leaf_index.end())
        for (std::int64_t i = 0; i < counts[it->second]; ++i) cur = g.add_child(cur);
      todo.emplace_back(c, g.add_child(cur));
    }
  }
  return g;
}

// Every branch keeps its larger subtree first, so the placement does not swap.
bool keeps_order(const OrderedTree& g) {
  for (NodeId v = 0; v < static_cast<NodeId>(g.size()); ++v) {
    const auto ch = g.children(v);
    if (ch.size() == 2 && count_below(g, ch[1]) > count_below(g, ch[0])) return false;
  }
  return true;
}

void for_each_composition(std::int64_t total, std::size_t parts, LeafCounts& out, std::size_t at,
                          const std::function<void(const LeafCounts&)>& visit) {
  if (at + 1 == parts) {
    out[at] = total;
    visit(out);
    return;
  }
  for (std::int64_t take = total; take >= 0; --take) {
    out[at] = take;
    for_each_composition(total - take, parts, out, at + 1, visit);
  }
}

}  // namespace

OracleResult optimal_wiring(const OrderedTree& tree, const OracleOptions& options) {
  if (static_cast<int>(tree.size()) > options.vertex_limit)
    throw std::invalid_argument("oracle is limited to " + std::to_string(options.vertex_limit) + " vertices, tree has " +
                                std::to_string(tree.size()));
  GridWiring constructed = wire(tree);
  const std::int64_t constructed_volume = volume(constructed);

  OracleResult result;
  result.budget = options.budget;
  result.box_half_width =
      options.box_half_width > 0 ? options.box_half_width : std::max<std::int64_t>(1, constructed_volume - 1);
  const std::int64_t side = 2 * result.box_half_width + 1;
  const std::int64_t incumbent = options.seed_with_construction ? constructed_volume : side * side + 1;
  WiringSearch search(tree, result.box_half_width, options.budget, incumbent);
  const bool improved = search.run();
  result.explored = search.explored();
  result.best_volume = search.best();
  if (improved) {
    result.witness = search.witness();
  } else if (options.seed_with_construction) {
    result.witness = std::move(constructed);
  } else {
    throw std::runtime_error("no 1-wiring fits in a box of half-width " + std::to_string(result.box_half_width));
  }
  return result;
}

GridWiring reference_wire(const OrderedTree& tree) {
  PartialWiring f = place_subtree(tree, tree.root());
  GridWiring w;
  w.vertices.resize(tree.size());
  for (const auto& [v, p] : f.at) w.vertices[static_cast<std::size_t>(v)] = p;
  w.edges = std::move(f.edges);
  std::sort(w.edges.begin(), w.edges.end(), [](const EdgePath& a, const EdgePath& b) { return a.to < b.to; });
  return w;
}

RatioEstimate exhaustive_vr(const Reduction& reduction, std::int64_t total, std::uint64_t budget) {
  if (total < 0) throw std::invalid_argument("negative subdivision total");
  const std::size_t k = reduction.leaf_count();
  const auto space = compositions(total, k);
  if (space > budget)
    throw BudgetError(std::to_string(space) + " candidate plans exceed the budget of " + std::to_string(budget));

  RatioEstimate best;
  best.total = total;
  best.volume = -1;
  LeafCounts plan(k, 0);
  for_each_composition(total, k, plan, 0, [&](const LeafCounts& p) {
    const OrderedTree g = build_stemmed(reduction, p);
    if (!keeps_order(g)) return;
    ++best.plans_examined;
    const GridWiring w = reference_wire(g);
    std::set<GridPoint> seen(w.vertices.begin(), w.vertices.end());
    for (const auto& e : w.edges) seen.insert(e.path.begin(), e.path.end());
    const auto vol = static_cast<std::int64_t>(seen.size());
    if (vol > best.volume || (vol == best.volume && p > best.plan)) {
      best.volume = vol;
      best.plan = p;
      best.vertices = static_cast<std::int64_t>(g.size());
    }
  });
  if (best.volume < 0) throw NoLegalPlanError("no legal plan with " + std::to_string(total) + " subdivisions");
  best.ratio = Rational(best.volume, best.vertices);
  return best;
}

}  // namespace latwire
