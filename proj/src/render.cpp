#include "latwire/render.hpp"

#include <array>
#include <sstream>

namespace latwire {

std::string render_svg(const GridWiring& wiring, const OrderedTree& tree, std::string_view comment) {
  static constexpr std::array<const char*, 3> kPalette{"#000000", "#1f3fbf", "#cc2222"};
  const Box box = bounding_box(wiring);
  const std::int64_t cols = box.max.x - box.min.x + 2;
  const std::int64_t rows = box.max.y - box.min.y + 2;
  auto px = [&](GridPoint p) { return (p.x - box.min.x + 1) * kSvgUnit; };
  auto py = [&](GridPoint p) { return (box.max.y - p.y + 1) * kSvgUnit; };

  std::vector<int> depth(tree.size(), 0);
  for (NodeId v : tree.preorder())
    for (NodeId c : tree.children(v)) depth[static_cast<std::size_t>(c)] = depth[static_cast<std::size_t>(v)] + 1;
  auto colour = [&](NodeId v) { return kPalette[static_cast<std::size_t>(depth[static_cast<std::size_t>(v)] % 3)]; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!comment.empty()) out << "<!-- " << comment << " -->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * kSvgUnit << "\" height=\"" << rows * kSvgUnit
      << "\" viewBox=\"0 0 " << cols * kSvgUnit << ' ' << rows * kSvgUnit << "\">\n";
  out << "<g stroke=\"#d0d0d0\" stroke-width=\"0.5\">\n";
  for (std::int64_t x = box.min.x; x <= box.max.x; ++x)
    out << "<line x1=\"" << px({x, 0}) << "\" y1=\"" << py({0, box.max.y}) << "\" x2=\"" << px({x, 0}) << "\" y2=\""
        << py({0, box.min.y}) << "\"/>\n";
  for (std::int64_t y = box.min.y; y <= box.max.y; ++y)
    out << "<line x1=\"" << px({box.min.x, 0}) << "\" y1=\"" << py({0, y}) << "\" x2=\"" << px({box.max.x, 0})
        << "\" y2=\"" << py({0, y}) << "\"/>\n";
  out << "</g>\n<g fill=\"none\" stroke-width=\"2\" stroke-linecap=\"square\">\n";
  for (const auto& e : wiring.edges) {
    if (e.path.empty()) continue;
    out << "<polyline stroke=\"" << colour(e.to) << "\" points=\"";
    for (std::size_t i = 0; i < e.path.size(); ++i) out << (i ? " " : "") << px(e.path[i]) << ',' << py(e.path[i]);
    out << "\"/>\n";
  }
  out << "</g>\n<g>\n";
  for (std::size_t v = 0; v < wiring.vertices.size(); ++v) {
    const auto p = wiring.vertices[v];
    out << "<circle cx=\"" << px(p) << "\" cy=\"" << py(p) << "\" r=\"4\" fill=\"" << colour(static_cast<NodeId>(v))
        << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace latwire
