#include "latwire/tree.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "latwire/errors.hpp"

namespace latwire {

OrderedTree::OrderedTree() : nodes_(1) {}

NodeId OrderedTree::add_child(NodeId parent) {
  auto& p = nodes_.at(static_cast<std::size_t>(parent));
  if (p.child_count == 2)
    throw DegreeError("node " + std::to_string(parent) + " already has two children");
  const auto id = static_cast<NodeId>(nodes_.size());
  p.child[p.child_count++] = id;
  TreeNode n;
  n.parent = parent;
  nodes_.push_back(n);
  return id;
}

std::vector<NodeId> OrderedTree::preorder() const {
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto ch = children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<NodeId> OrderedTree::leaves() const {
  std::vector<NodeId> out;
  for (NodeId v : preorder())
    if (node(v).child_count == 0) out.push_back(v);
  return out;
}

bool operator==(const OrderedTree& a, const OrderedTree& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::pair<NodeId, NodeId>> stack{{a.root(), b.root()}};
  while (!stack.empty()) {
    const auto [u, v] = stack.back();
    stack.pop_back();
    const auto cu = a.children(u);
    const auto cv = b.children(v);
    if (cu.size() != cv.size()) return false;
    for (std::size_t i = 0; i < cu.size(); ++i) stack.emplace_back(cu[i], cv[i]);
  }
  return true;
}

OrderedTree parse_tree(std::string_view text) {
  OrderedTree tree;
  std::vector<NodeId> open;
  std::vector<std::size_t> opened_at;
  bool root_seen = false;
  bool root_closed = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
    if (c == '(') {
      if (root_closed) throw ParseError("content after the root node", i);
      if (!root_seen) {
        root_seen = true;
        open.push_back(tree.root());
      } else {
        if (tree.node(open.back()).child_count == 2)
          throw DegreeError("node opened at byte " + std::to_string(opened_at.back()) +
                            " has a third child at byte " + std::to_string(i));
        open.push_back(tree.add_child(open.back()));
      }
      opened_at.push_back(i);
    } else if (c == ')') {
      if (open.empty()) throw ParseError("unbalanced ')'", i);
      open.pop_back();
      opened_at.pop_back();
      if (open.empty()) root_closed = true;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
  }
  if (!root_seen) throw ParseError("empty tree text", text.size());
  if (!open.empty()) throw ParseError("unclosed '('", text.size());
  return tree;
}

std::string to_text(const OrderedTree& tree) {
  std::string out;
  out.reserve(2 * tree.size());
  // (node, next child index)
  std::vector<std::pair<NodeId, std::size_t>> stack{{tree.root(), 0}};
  out.push_back('(');
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto ch = tree.children(v);
    if (next < ch.size()) {
      const NodeId c = ch[next++];
      out.push_back('(');
      stack.emplace_back(c, 0);
    } else {
      out.push_back(')');
      stack.pop_back();
    }
  }
  return out;
}

namespace {

NodeId append_path(OrderedTree& tree, NodeId parent, std::int64_t vertices) {
  NodeId cur = parent;
  for (std::int64_t i = 0; i < vertices; ++i) cur = tree.add_child(cur);
  return cur;
}

void append_perfect(OrderedTree& tree, NodeId parent, int height) {
  const NodeId v = tree.add_child(parent);
  if (height == 0) return;
  append_perfect(tree, v, height - 1);
  append_perfect(tree, v, height - 1);
}

// Copies the subtrees of `tree`'s root under `parent` of `out`, creating
// every node when first visited so labels come out in preorder.
void copy_children_preorder(const OrderedTree& tree, OrderedTree& out, NodeId parent) {
  std::vector<std::pair<NodeId, NodeId>> visit;  // (source node, output parent)
  const auto rc = tree.children(tree.root());
  for (auto it = rc.rbegin(); it != rc.rend(); ++it) visit.emplace_back(*it, parent);
  while (!visit.empty()) {
    const auto [src, dst_parent] = visit.back();
    visit.pop_back();
    const NodeId dst = out.add_child(dst_parent);
    const auto ch = tree.children(src);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) visit.emplace_back(*it, dst);
  }
}

OrderedTree relabel_preorder(const OrderedTree& tree) {
  OrderedTree out;
  copy_children_preorder(tree, out, out.root());
  return out;
}

}  // namespace

OrderedTree generate_path(std::int64_t vertices) {
  if (vertices < 1) throw std::invalid_argument("a path needs at least one vertex");
  OrderedTree tree;
  append_path(tree, tree.root(), vertices - 1);
  return tree;
}

OrderedTree generate_bn(int n) {
  if (n < 0 || n > 28) throw std::invalid_argument("B_n height out of range: " + std::to_string(n));
  OrderedTree tree;
  append_perfect(tree, tree.root(), n);
  return tree;
}

OrderedTree generate_sn(int n) {
  if (n < 2 || n > 28) throw std::invalid_argument("S_n needs 2 <= n <= 28, got " + std::to_string(n));
  OrderedTree tree;
  const NodeId top = tree.add_child(tree.root());
  append_path(tree, top, (std::int64_t{1} << n) - 1);
  const NodeId second = tree.add_child(top);
  append_path(tree, second, (std::int64_t{1} << (n - 1)) - 1);
  append_perfect(tree, second, n - 2);
  return tree;
}

OrderedTree random_tree(std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_tree needs n >= 1");
  std::mt19937_64 rng(seed);
  OrderedTree tree;
  std::vector<NodeId> open{tree.root()};
  for (std::int64_t i = 1; i < n; ++i) {
    const std::size_t pick = static_cast<std::size_t>(rng() % open.size());
    const NodeId parent = open[pick];
    const NodeId child = tree.add_child(parent);
    if (tree.node(parent).child_count == 2) {
      open[pick] = open.back();
      open.pop_back();
    }
    open.push_back(child);
  }
  return relabel_preorder(tree);
}

std::vector<OrderedTree> enumerate_trees(int n) {
  if (n < 1) return {};
  std::vector<std::vector<std::string>> texts(static_cast<std::size_t>(n) + 1);
  texts[1] = {"()"};
  for (int m = 2; m <= n; ++m) {
    auto& out = texts[static_cast<std::size_t>(m)];
    for (const auto& s : texts[static_cast<std::size_t>(m - 1)]) out.push_back("(" + s + ")");
    for (int k = 1; k <= m - 2; ++k)
      for (const auto& a : texts[static_cast<std::size_t>(k)])
        for (const auto& b : texts[static_cast<std::size_t>(m - 1 - k)]) out.push_back("(" + a + b + ")");
  }
  std::vector<OrderedTree> trees;
  trees.reserve(texts[static_cast<std::size_t>(n)].size());
  for (const auto& s : texts[static_cast<std::size_t>(n)]) trees.push_back(parse_tree(s));
  return trees;
}

std::vector<std::int64_t> subtree_sizes(const OrderedTree& tree) {
  std::vector<std::int64_t> size(tree.size(), 1);
  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (NodeId c : tree.children(*it)) size[static_cast<std::size_t>(*it)] += size[static_cast<std::size_t>(c)];
  return size;
}

OrderedTree with_stem(const OrderedTree& tree) {
  OrderedTree out;
  copy_children_preorder(tree, out, out.add_child(out.root()));
  return out;
}

// --- reductions ------------------------------------------------------------

Reduction::Reduction(OrderedTree full_binary) : tree_(std::move(full_binary)) {
  spans_.assign(tree_.size(), {0, 0});
  const auto order = tree_.preorder();
  for (NodeId v : order) {
    const auto cc = tree_.node(v).child_count;
    if (cc == 1) throw std::invalid_argument("reduction node " + std::to_string(v) + " has exactly one child");
    if (cc == 0) leaves_.push_back(v);
  }
  std::vector<std::size_t> index(tree_.size(), 0);
  for (std::size_t i = 0; i < leaves_.size(); ++i) {
    index[static_cast<std::size_t>(leaves_[i])] = i;
    spans_[static_cast<std::size_t>(leaves_[i])] = {i, i + 1};
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const auto ch = tree_.children(*it);
    if (ch.empty()) continue;
    spans_[static_cast<std::size_t>(*it)] = {spans_[static_cast<std::size_t>(ch.front())].first,
                                             spans_[static_cast<std::size_t>(ch.back())].second};
  }
}

std::pair<std::size_t, std::size_t> Reduction::leaf_span(NodeId id) const {
  return spans_.at(static_cast<std::size_t>(id));
}

Reduction reduce(const OrderedTree& tree) {
  const auto size = subtree_sizes(tree);
  auto branch_point = [&](NodeId v) {
    while (tree.node(v).child_count == 1) v = tree.node(v).child[0];
    return v;
  };
  OrderedTree out;
  // (input branch point, output node); output nodes are created in preorder.
  std::vector<std::pair<NodeId, NodeId>> stack{{branch_point(tree.root()), out.root()}};
  while (!stack.empty()) {
    const auto [src, dst] = stack.back();
    stack.pop_back();
    const auto ch = tree.children(src);
    if (ch.empty()) continue;
    NodeId first = ch[0];
    NodeId second = ch[1];
    if (size[static_cast<std::size_t>(second)] > size[static_cast<std::size_t>(first)]) std::swap(first, second);
    const NodeId a = out.add_child(dst);
    const NodeId b = out.add_child(dst);
    stack.emplace_back(branch_point(second), b);
    stack.emplace_back(branch_point(first), a);
  }
  // add_child on both children before descending breaks preorder labels.
  return Reduction(relabel_preorder(out));
}

EdgeCounts leaf_edge_counts(const Reduction& reduction, const LeafCounts& counts) {
  if (counts.size() != reduction.leaf_count())
    throw std::invalid_argument("plan has " + std::to_string(counts.size()) + " entries for " +
                                std::to_string(reduction.leaf_count()) + " leaves");
  EdgeCounts edges(reduction.size(), 0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 0) throw std::invalid_argument("negative subdivision count");
    if (reduction.leaves()[i] == reduction.tree().root()) {
      // A single-vertex reduction has no leaf edge; counts hang below the root.
      edges[0] = counts[i];
    } else {
      edges[static_cast<std::size_t>(reduction.leaves()[i])] = counts[i];
    }
  }
  return edges;
}

NodeId first_ordering_violation(const Reduction& reduction, const EdgeCounts& counts) {
  const auto& tree = reduction.tree();
  if (counts.size() != tree.size()) throw std::invalid_argument("edge plan size mismatch");
  std::vector<std::int64_t> mass(tree.size(), 1);
  const auto order = tree.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (NodeId c : tree.children(*it))
      mass[static_cast<std::size_t>(*it)] += mass[static_cast<std::size_t>(c)] + counts[static_cast<std::size_t>(c)];
  for (NodeId v : order) {
    const auto ch = tree.children(v);
    if (ch.size() != 2) continue;
    const auto left = mass[static_cast<std::size_t>(ch[0])] + counts[static_cast<std::size_t>(ch[0])];
    const auto right = mass[static_cast<std::size_t>(ch[1])] + counts[static_cast<std::size_t>(ch[1])];
    if (right > left) return v;
  }
  return kNoNode;
}

bool satisfies_size_ordering(const Reduction& reduction, const LeafCounts& counts) {
  return first_ordering_violation(reduction, leaf_edge_counts(reduction, counts)) == kNoNode;
}

OrderedTree subdivide_edges(const Reduction& reduction, const EdgeCounts& counts) {
  const auto& tree = reduction.tree();
  if (counts.size() != tree.size()) throw std::invalid_argument("edge plan size mismatch");
  for (auto c : counts)
    if (c < 0) throw std::invalid_argument("negative subdivision count");
  if (const NodeId bad = first_ordering_violation(reduction, counts); bad != kNoNode)
    throw OrderingError("right subtree outweighs left at reduction node " + std::to_string(bad));

  OrderedTree out;
  NodeId root_end = out.root();
  // Only a single-vertex reduction may carry subdivisions on its root entry.
  if (tree.size() == 1) {
    root_end = append_path(out, out.root(), counts[0]);
  } else if (counts[0] != 0) {
    throw std::invalid_argument("the root of a reduction has no incoming edge to subdivide");
  }
  std::vector<std::pair<NodeId, NodeId>> visit;  // (reduction node, output parent)
  const auto rc = tree.children(tree.root());
  for (auto it = rc.rbegin(); it != rc.rend(); ++it) visit.emplace_back(*it, root_end);
  while (!visit.empty()) {
    const auto [src, parent] = visit.back();
    visit.pop_back();
    const NodeId above = append_path(out, parent, counts[static_cast<std::size_t>(src)]);
    const NodeId dst = out.add_child(above);
    const auto ch = tree.children(src);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) visit.emplace_back(*it, dst);
  }
  return out;
}

OrderedTree subdivide(const Reduction& reduction, const LeafCounts& counts) {
  return subdivide_edges(reduction, leaf_edge_counts(reduction, counts));
}

int branch_depth(const Reduction& reduction) {
  const auto& tree = reduction.tree();
  std::vector<int> depth(tree.size(), 0);
  int best = 0;
  for (NodeId v : tree.preorder()) {
    const int here = depth[static_cast<std::size_t>(v)] + (tree.node(v).child_count == 2 ? 1 : 0);
    for (NodeId c : tree.children(v)) depth[static_cast<std::size_t>(c)] = here;
    if (tree.node(v).child_count == 0) best = std::max(best, depth[static_cast<std::size_t>(v)]);
  }
  return best;
}

}  // namespace latwire
