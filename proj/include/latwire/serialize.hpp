#pragma once

// Canonical embedding text:
//   {"vertices":{"0":[x,y],...},"edges":[{"from":u,"to":v,"path":[[x,y],...]},...],
//    "volume":V,"bbox":[[minx,miny],[maxx,maxy]]}
// Field order is fixed; all numbers are integers.

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "latwire/wiring.hpp"

namespace latwire {

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

nlohmann::ordered_json embedding_json(const GridWiring& wiring);

/// Compact canonical JSON, no trailing newline.
std::string embedding_to_json(const GridWiring& wiring);

/// A parsed embedding with the volume and bbox fields as stated in the file.
struct EmbeddingDocument {
  GridWiring wiring;
  std::int64_t stated_volume = 0;
  Box stated_bbox;
};

/// Extra top-level keys (such as "meta") are ignored. Throws FormatError.
EmbeddingDocument parse_embedding(std::string_view text);

}  // namespace latwire
