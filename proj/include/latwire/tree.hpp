#pragma once

// Rooted ordered trees of maximal degree 3 and their series reductions.
//
// Every node has at most two ordered children, so a non-root node has degree
// at most 3 and the root at most 2. Node 0 is always the root. Trees produced
// by the parser and generators are labelled in preorder.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace latwire {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct TreeNode {
  NodeId parent = kNoNode;
  std::array<NodeId, 2> child{kNoNode, kNoNode};
  std::uint8_t child_count = 0;

  std::span<const NodeId> children() const { return {child.data(), child_count}; }
};

class OrderedTree {
public:
  /// A single root vertex.
  OrderedTree();

  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return 0; }
  const TreeNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::span<const NodeId> children(NodeId id) const { return node(id).children(); }
  NodeId parent(NodeId id) const { return node(id).parent; }

  /// Appends a new last child under `parent`. Throws DegreeError if it already has two.
  NodeId add_child(NodeId parent);

  std::vector<NodeId> preorder() const;
  /// Leaves in depth-first left-to-right order.
  std::vector<NodeId> leaves() const;

  /// Same shape and child order; node labels are not compared.
  friend bool operator==(const OrderedTree& a, const OrderedTree& b);

private:
  std::vector<TreeNode> nodes_;
};

/// Nested-parenthesis grammar: node ::= "(" node{0,2} ")", whitespace ignored.
/// Throws ParseError (with byte offset) or DegreeError.
OrderedTree parse_tree(std::string_view text);

/// Canonical text: no whitespace.
std::string to_text(const OrderedTree& tree);

OrderedTree generate_path(std::int64_t vertices);

/// Perfect ordered binary tree of height n under one extra degree-1 vertex; 2^(n+1) vertices.
OrderedTree generate_bn(int n);

/// B_n with the root's first subtree replaced by a path of 2^n - 1 vertices and
/// the second child's first subtree replaced by a path of 2^(n-1) - 1 vertices.
/// The remaining perfect subtree of height n-2 holds the spiral leaves. Requires n >= 2.
OrderedTree generate_sn(int n);

/// n vertices grown by attaching each new vertex as the last child of a node
/// chosen uniformly among those with a free child slot. Deterministic in `seed`.
OrderedTree random_tree(std::int64_t n, std::uint64_t seed);

/// Every ordered tree with exactly n vertices, in a fixed order.
std::vector<OrderedTree> enumerate_trees(int n);

/// size[v] = vertex count of the subtree rooted at v.
std::vector<std::int64_t> subtree_sizes(const OrderedTree& tree);

/// New tree with an extra degree-1 root above the old root. Old labels shift by one.
OrderedTree with_stem(const OrderedTree& tree);

/// A series-reduced ordered full binary tree together with its leaf enumeration.
class Reduction {
public:
  /// Throws std::invalid_argument unless every node has 0 or 2 children.
  explicit Reduction(OrderedTree full_binary);

  const OrderedTree& tree() const { return tree_; }
  std::size_t size() const { return tree_.size(); }
  std::size_t leaf_count() const { return leaves_.size(); }
  /// Node of leaf i in left-to-right order.
  std::span<const NodeId> leaves() const { return leaves_; }
  /// Leaf index range covered by the subtree at `id` (half-open).
  std::pair<std::size_t, std::size_t> leaf_span(NodeId id) const;

  friend bool operator==(const Reduction& a, const Reduction& b) { return a.tree_ == b.tree_; }

private:
  OrderedTree tree_;
  std::vector<NodeId> leaves_;
  std::vector<std::pair<std::size_t, std::size_t>> spans_;
};

/// Subdivision counts per leaf index of a reduction.
using LeafCounts = std::vector<std::int64_t>;
/// Subdivision counts per node of a reduction, for the edge entering that node.
/// The root entry must be zero.
using EdgeCounts = std::vector<std::int64_t>;

/// Splices out one-child nodes and puts the larger subtree (by vertex count in
/// the input) first at every branch; equal sizes keep input order.
Reduction reduce(const OrderedTree& tree);

/// Spreads leaf counts onto the edges entering the leaf nodes.
EdgeCounts leaf_edge_counts(const Reduction& reduction, const LeafCounts& counts);

/// First branch node (preorder) whose right side outweighs its left side,
/// counting vertices plus subdivisions; kNoNode if the plan is legal.
NodeId first_ordering_violation(const Reduction& reduction, const EdgeCounts& counts);

/// Left mass >= right mass at every branch, counting vertices and subdivisions.
bool satisfies_size_ordering(const Reduction& reduction, const LeafCounts& counts);

/// Subdivides leaf edge i counts[i] times. |result| = |R| + sum(counts).
/// Throws OrderingError if the result would not reduce back to R.
OrderedTree subdivide(const Reduction& reduction, const LeafCounts& counts);

/// Subdivides any edge of R; counts indexed by node id of R.
OrderedTree subdivide_edges(const Reduction& reduction, const EdgeCounts& counts);

/// L(R): the largest number of two-child nodes on a root-to-leaf path.
int branch_depth(const Reduction& reduction);

}  // namespace latwire
