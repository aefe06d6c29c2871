#pragma once

// Lattice embeddings of ordered trees into Z^2.
//
// `wire` is the recursive placement: the root sits at the origin, the larger
// child subtree is stacked straight above it, and the smaller one is rotated
// a quarter turn clockwise and set to the right. Connectors are straight
// axis-parallel segments, so every image path is a taxicab geodesic.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latwire/tree.hpp"

namespace latwire {

struct GridPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
  friend GridPoint operator+(GridPoint a, GridPoint b) { return {a.x + b.x, a.y + b.y}; }
  friend GridPoint operator-(GridPoint a) { return {-a.x, -a.y}; }
};

inline std::int64_t taxicab(GridPoint a, GridPoint b) {
  const auto dx = a.x - b.x;
  const auto dy = a.y - b.y;
  return (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
}

struct Box {
  GridPoint min;
  GridPoint max;

  friend bool operator==(const Box&, const Box&) = default;
  /// Lattice points inside the box.
  std::int64_t area() const { return (max.x - min.x + 1) * (max.y - min.y + 1); }
};

/// Image of one tree edge: a lattice walk from the image of `from` to the image of `to`.
struct EdgePath {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  std::vector<GridPoint> path;

  friend bool operator==(const EdgePath&, const EdgePath&) = default;
};

struct GridWiring {
  /// vertices[v] is the image of tree node v.
  std::vector<GridPoint> vertices;
  std::vector<EdgePath> edges;

  bool empty() const { return vertices.empty(); }
  friend bool operator==(const GridWiring&, const GridWiring&) = default;
};

GridWiring wire(const OrderedTree& tree);

/// Images of a node's child subtrees, in that node's own frame (node at the origin),
/// as placed by the recursion.
struct AssemblyStep {
  NodeId node = kNoNode;
  std::optional<Box> first;
  std::optional<Box> second;
};

/// First child inside {x >= 0, y >= 1}, second inside {x >= 1, y <= 0}.
bool quadrant_separated(const AssemblyStep& step);

struct WiringTrace {
  GridWiring wiring;
  std::vector<AssemblyStep> steps;  // one per node, indexed by node id
};

/// `wire` plus the per-node assembly boxes used for the quadrant check.
WiringTrace wire_with_trace(const OrderedTree& tree);

/// |min y| over every vertex image and path point.
std::int64_t conn(const GridWiring& wiring);

/// (x, y) -> (y, -x) on every point.
GridWiring rotate_cw(GridWiring wiring);
GridWiring translate(GridWiring wiring, GridPoint offset);

/// Distinct lattice points met by vertex images and edge paths.
std::int64_t volume(const GridWiring& wiring);

/// 1 + sum over tree edges of the taxicab distance between endpoint images.
/// Agrees with `volume` when paths are geodesics meeting only at shared endpoints.
std::int64_t volume_by_formula(const GridWiring& wiring, const OrderedTree& tree);

Box bounding_box(const GridWiring& wiring);

struct VertexCollision {
  GridPoint point;
  std::vector<NodeId> nodes;
};

/// A unit lattice edge from `a` to the neighbouring `b` (a < b).
struct UnitEdge {
  GridPoint a;
  GridPoint b;
  friend auto operator<=>(const UnitEdge&, const UnitEdge&) = default;
};

struct EdgeOverload {
  UnitEdge edge;
  std::vector<std::size_t> paths;  // indices into GridWiring::edges
};

struct ValidationReport {
  int requested_k = 1;
  /// Smallest k meeting the vertex condition (max preimage size).
  int k_vertex = 1;
  /// Smallest k meeting the edge condition (max paths through one unit edge).
  int k_edge = 1;
  std::vector<VertexCollision> vertex_collisions;  // points with more than k preimages
  std::vector<EdgeOverload> edge_overloads;        // unit edges in more than k paths
  std::vector<std::string> structural_errors;      // broken continuity, wrong endpoints, bad ids

  bool valid() const {
    return structural_errors.empty() && vertex_collisions.empty() && edge_overloads.empty();
  }
};

/// Checks the coarse k-wiring conditions. Throws std::invalid_argument if k < 1.
ValidationReport validate_k_wiring(const GridWiring& wiring, int k);

}  // namespace latwire
