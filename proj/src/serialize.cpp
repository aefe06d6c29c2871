#include "latwire/serialize.hpp"

#include <charconv>

namespace latwire {

namespace {

nlohmann::ordered_json point_json(GridPoint p) { return nlohmann::ordered_json::array({p.x, p.y}); }

GridPoint point_from(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw FormatError(where + ": expected [x, y] with integer coordinates");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

NodeId id_from(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + ": expected an integer node id");
  return static_cast<NodeId>(j.get<std::int64_t>());
}

}  // namespace

nlohmann::ordered_json embedding_json(const GridWiring& wiring) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json vertices = nlohmann::ordered_json::object();
  for (std::size_t v = 0; v < wiring.vertices.size(); ++v) vertices[std::to_string(v)] = point_json(wiring.vertices[v]);
  doc["vertices"] = std::move(vertices);
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& e : wiring.edges) {
    nlohmann::ordered_json path = nlohmann::ordered_json::array();
    for (const auto& p : e.path) path.push_back(point_json(p));
    nlohmann::ordered_json edge;
    edge["from"] = e.from;
    edge["to"] = e.to;
    edge["path"] = std::move(path);
    edges.push_back(std::move(edge));
  }
  doc["edges"] = std::move(edges);
  doc["volume"] = volume(wiring);
  const Box b = bounding_box(wiring);
  doc["bbox"] = nlohmann::ordered_json::array({point_json(b.min), point_json(b.max)});
  return doc;
}

std::string embedding_to_json(const GridWiring& wiring) { return embedding_json(wiring).dump(); }

EmbeddingDocument parse_embedding(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("embedding is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("embedding must be a JSON object");
  for (const char* key : {"vertices", "edges", "volume", "bbox"})
    if (!doc.contains(key)) throw FormatError(std::string("missing field \"") + key + "\"");

  EmbeddingDocument out;
  const auto& vertices = doc["vertices"];
  if (!vertices.is_object()) throw FormatError("\"vertices\" must be an object");
  out.wiring.vertices.resize(vertices.size());
  std::vector<bool> seen(vertices.size(), false);
  for (const auto& [key, value] : vertices.items()) {
    std::size_t id = 0;
    const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (ec != std::errc{} || ptr != key.data() + key.size() || id >= vertices.size() || seen[id])
      throw FormatError("vertex ids must be 0..n-1, got \"" + key + "\"");
    seen[id] = true;
    out.wiring.vertices[id] = point_from(value, "vertex " + key);
  }

  const auto& edges = doc["edges"];
  if (!edges.is_array()) throw FormatError("\"edges\" must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string where = "edge " + std::to_string(i);
    if (!e.is_object() || !e.contains("from") || !e.contains("to") || !e.contains("path") || !e["path"].is_array())
      throw FormatError(where + ": expected {\"from\", \"to\", \"path\"}");
    EdgePath path{id_from(e["from"], where), id_from(e["to"], where), {}};
    for (const auto& p : e["path"]) path.path.push_back(point_from(p, where));
    out.wiring.edges.push_back(std::move(path));
  }

  if (!doc["volume"].is_number_integer()) throw FormatError("\"volume\" must be an integer");
  out.stated_volume = doc["volume"].get<std::int64_t>();
  const auto& bbox = doc["bbox"];
  if (!bbox.is_array() || bbox.size() != 2) throw FormatError("\"bbox\" must be [[minx,miny],[maxx,maxy]]");
  out.stated_bbox = {point_from(bbox[0], "bbox"), point_from(bbox[1], "bbox")};
  return out;
}

}  // namespace latwire
