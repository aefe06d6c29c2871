#pragma once

#include <string>
#include <string_view>

#include "latwire/tree.hpp"
#include "latwire/wiring.hpp"

namespace latwire {

inline constexpr int kSvgUnit = 16;

/// SVG of a wiring on its lattice: 16 px per unit, vertices as filled circles,
/// paths as 2 px strokes, coloured black/blue/red by node depth mod 3 (an
/// edge takes its lower endpoint's colour). `comment` is embedded verbatim
/// as an XML comment when non-empty.
std::string render_svg(const GridWiring& wiring, const OrderedTree& tree, std::string_view comment = {});

}  // namespace latwire
