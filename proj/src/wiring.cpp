#include "latwire/wiring.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace latwire {

namespace {

// Quarter turns clockwise: (x, y) -> (y, -x).
GridPoint turn(GridPoint p, int quarter_turns) {
  for (int i = 0; i < (quarter_turns & 3); ++i) p = {p.y, -p.x};
  return p;
}

Box extend(Box b, const Box& other) {
  b.min.x = std::min(b.min.x, other.min.x);
  b.min.y = std::min(b.min.y, other.min.y);
  b.max.x = std::max(b.max.x, other.max.x);
  b.max.y = std::max(b.max.y, other.max.y);
  return b;
}

// Box of a child image after it is placed above its parent.
Box place_first(const Box& child) {
  const std::int64_t lift = -child.min.y + 1;
  return {{child.min.x, child.min.y + lift}, {child.max.x, child.max.y + lift}};
}

// Box of a child image after the clockwise turn and the shift to the right.
Box place_second(const Box& child) {
  const std::int64_t shift = -child.min.y + 1;
  return {{child.min.y + shift, -child.max.x}, {child.max.y + shift, -child.min.x}};
}

std::vector<GridPoint> segment(GridPoint from, GridPoint step, std::int64_t length) {
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<std::size_t>(length) + 1);
  for (std::int64_t i = 0; i <= length; ++i) pts.push_back({from.x + i * step.x, from.y + i * step.y});
  return pts;
}

}  // namespace

bool quadrant_separated(const AssemblyStep& step) {
  if (step.first && !(step.first->min.x >= 0 && step.first->min.y >= 1)) return false;
  if (step.second && !(step.second->min.x >= 1 && step.second->max.y <= 0)) return false;
  return true;
}

WiringTrace wire_with_trace(const OrderedTree& tree) {
  const std::size_t n = tree.size();
  const auto size = subtree_sizes(tree);
  const auto order = tree.preorder();

  // Children in placement order: larger subtree first, ties keep input order.
  std::vector<std::array<NodeId, 2>> placed(n, {kNoNode, kNoNode});
  for (NodeId v : order) {
    const auto ch = tree.children(v);
    auto& p = placed[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < ch.size(); ++i) p[i] = ch[i];
    if (ch.size() == 2 && size[static_cast<std::size_t>(ch[1])] > size[static_cast<std::size_t>(ch[0])])
      std::swap(p[0], p[1]);
  }

  // Bottom-up: image box of each subtree in its own frame.
  WiringTrace trace;
  trace.steps.resize(n);
  std::vector<Box> box(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto v = static_cast<std::size_t>(*it);
    AssemblyStep& step = trace.steps[v];
    step.node = *it;
    Box b{};
    if (placed[v][0] != kNoNode) {
      step.first = place_first(box[static_cast<std::size_t>(placed[v][0])]);
      b = extend(b, *step.first);
    }
    if (placed[v][1] != kNoNode) {
      step.second = place_second(box[static_cast<std::size_t>(placed[v][1])]);
      b = extend(b, *step.second);
    }
    box[v] = b;
  }

  // Top-down: compose frame transforms. A node's frame maps p to turn(p, rot) + origin.
  GridWiring& w = trace.wiring;
  w.vertices.assign(n, GridPoint{});
  w.edges.resize(n > 0 ? n - 1 : 0);
  std::vector<int> rot(n, 0);
  for (NodeId v : order) {
    const auto vi = static_cast<std::size_t>(v);
    for (int slot = 0; slot < 2; ++slot) {
      const NodeId c = placed[vi][static_cast<std::size_t>(slot)];
      if (c == kNoNode) continue;
      const auto ci = static_cast<std::size_t>(c);
      const std::int64_t length = -box[ci].min.y + 1;
      const GridPoint unit = turn(slot == 0 ? GridPoint{0, 1} : GridPoint{1, 0}, rot[vi]);
      rot[ci] = (rot[vi] + slot) & 3;
      w.vertices[ci] = {w.vertices[vi].x + length * unit.x, w.vertices[vi].y + length * unit.y};
      // Root is node 0, so node c's parent edge lives at c - 1.
      w.edges[ci - 1] = EdgePath{v, c, segment(w.vertices[vi], unit, length)};
    }
  }
  return trace;
}

GridWiring wire(const OrderedTree& tree) {
  auto trace = wire_with_trace(tree);
  for (const auto& step : trace.steps)
    if (!quadrant_separated(step))
      throw std::logic_error("quadrant separation failed at node " + std::to_string(step.node));
  return std::move(trace.wiring);
}

std::int64_t conn(const GridWiring& wiring) {
  if (wiring.empty()) throw std::invalid_argument("conn of an empty wiring");
  std::int64_t low = wiring.vertices.front().y;
  for (const auto& p : wiring.vertices) low = std::min(low, p.y);
  for (const auto& e : wiring.edges)
    for (const auto& p : e.path) low = std::min(low, p.y);
  return low < 0 ? -low : low;
}

GridWiring rotate_cw(GridWiring wiring) {
  for (auto& p : wiring.vertices) p = turn(p, 1);
  for (auto& e : wiring.edges)
    for (auto& p : e.path) p = turn(p, 1);
  return wiring;
}

GridWiring translate(GridWiring wiring, GridPoint offset) {
  for (auto& p : wiring.vertices) p = p + offset;
  for (auto& e : wiring.edges)
    for (auto& p : e.path) p = p + offset;
  return wiring;
}

std::int64_t volume(const GridWiring& wiring) {
  std::vector<GridPoint> pts = wiring.vertices;
  for (const auto& e : wiring.edges) pts.insert(pts.end(), e.path.begin(), e.path.end());
  std::sort(pts.begin(), pts.end());
  return std::unique(pts.begin(), pts.end()) - pts.begin();
}

std::int64_t volume_by_formula(const GridWiring& wiring, const OrderedTree& tree) {
  std::int64_t total = 1;
  for (NodeId v : tree.preorder())
    for (NodeId c : tree.children(v))
      total += taxicab(wiring.vertices.at(static_cast<std::size_t>(v)), wiring.vertices.at(static_cast<std::size_t>(c)));
  return total;
}

Box bounding_box(const GridWiring& wiring) {
  if (wiring.empty()) throw std::invalid_argument("bounding box of an empty wiring");
  Box b{wiring.vertices.front(), wiring.vertices.front()};
  auto take = [&](GridPoint p) { b = extend(b, Box{p, p}); };
  for (const auto& p : wiring.vertices) take(p);
  for (const auto& e : wiring.edges)
    for (const auto& p : e.path) take(p);
  return b;
}

ValidationReport validate_k_wiring(const GridWiring& wiring, int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  ValidationReport report;
  report.requested_k = k;
  const auto n = wiring.vertices.size();

  for (std::size_t i = 0; i < wiring.edges.size(); ++i) {
    const auto& e = wiring.edges[i];
    const std::string tag = "edge " + std::to_string(i) + " (" + std::to_string(e.from) + "->" + std::to_string(e.to) + ")";
    if (e.from < 0 || e.to < 0 || static_cast<std::size_t>(e.from) >= n || static_cast<std::size_t>(e.to) >= n) {
      report.structural_errors.push_back(tag + ": endpoint id out of range");
      continue;
    }
    if (e.path.empty()) {
      report.structural_errors.push_back(tag + ": empty path");
      continue;
    }
    if (e.path.front() != wiring.vertices[static_cast<std::size_t>(e.from)] ||
        e.path.back() != wiring.vertices[static_cast<std::size_t>(e.to)])
      report.structural_errors.push_back(tag + ": path endpoints do not match vertex images");
    for (std::size_t j = 1; j < e.path.size(); ++j)
      if (taxicab(e.path[j - 1], e.path[j]) != 1) {
        report.structural_errors.push_back(tag + ": step " + std::to_string(j) + " is not a unit move");
        break;
      }
  }

  // Condition 1: preimage sizes of vertex images.
  std::vector<std::pair<GridPoint, NodeId>> images;
  images.reserve(n);
  for (std::size_t v = 0; v < n; ++v) images.emplace_back(wiring.vertices[v], static_cast<NodeId>(v));
  std::sort(images.begin(), images.end());
  for (std::size_t i = 0; i < images.size();) {
    std::size_t j = i;
    while (j < images.size() && images[j].first == images[i].first) ++j;
    const int count = static_cast<int>(j - i);
    report.k_vertex = std::max(report.k_vertex, count);
    if (count > k) {
      VertexCollision c{images[i].first, {}};
      for (std::size_t m = i; m < j; ++m) c.nodes.push_back(images[m].second);
      report.vertex_collisions.push_back(std::move(c));
    }
    i = j;
  }

  // Condition 2: number of distinct paths through each unit edge.
  std::vector<std::pair<UnitEdge, std::size_t>> uses;
  std::vector<UnitEdge> local;
  for (std::size_t i = 0; i < wiring.edges.size(); ++i) {
    const auto& path = wiring.edges[i].path;
    local.clear();
    for (std::size_t j = 1; j < path.size(); ++j) {
      if (taxicab(path[j - 1], path[j]) != 1) continue;
      local.push_back(path[j - 1] < path[j] ? UnitEdge{path[j - 1], path[j]} : UnitEdge{path[j], path[j - 1]});
    }
    std::sort(local.begin(), local.end());
    local.erase(std::unique(local.begin(), local.end()), local.end());
    for (const auto& u : local) uses.emplace_back(u, i);
  }
  std::sort(uses.begin(), uses.end());
  for (std::size_t i = 0; i < uses.size();) {
    std::size_t j = i;
    while (j < uses.size() && uses[j].first == uses[i].first) ++j;
    const int count = static_cast<int>(j - i);
    report.k_edge = std::max(report.k_edge, count);
    if (count > k) {
      EdgeOverload o{uses[i].first, {}};
      for (std::size_t m = i; m < j; ++m) o.paths.push_back(uses[m].second);
      report.edge_overloads.push_back(std::move(o));
    }
    i = j;
  }
  return report;
}

}  // namespace latwire
