#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rainbow/error.hpp"
#include "rainbow/graph.hpp"

namespace rainbow {

using Json = nlohmann::ordered_json;

// Canonical instance document:
//   {"n_vertices": int, "n_colors": int, "kind": str, "edges": [[u, v, c], ...]}
// plus an optional "sides" array (0/1 per vertex) for bipartite instances.
inline Json instance_to_json(const ColouredMultigraph& g) {
  Json j;
  j["n_vertices"] = g.n_vertices();
  j["n_colors"] = g.n_colours();
  j["kind"] = std::string(to_string(g.kind()));
  Json edges = Json::array();
  for (const Edge& e : g.edges()) edges.push_back(Json::array({e.u, e.v, e.colour}));
  j["edges"] = std::move(edges);
  if (g.sides()) j["sides"] = *g.sides();
  return j;
}

inline ColouredMultigraph instance_from_json(const Json& j) {
  try {
    auto kind = parse_kind(j.at("kind").get<std::string>());
    if (!kind) throw Error(ErrorCode::kParse, "unknown kind '" + j.at("kind").get<std::string>() + "'");
    std::vector<Edge> edges;
    for (const auto& row : j.at("edges")) {
      if (!row.is_array() || row.size() != 3) throw Error(ErrorCode::kParse, "edge must be [u, v, c]");
      edges.push_back({row[0].get<Vertex>(), row[1].get<Vertex>(), row[2].get<Colour>()});
    }
    std::optional<std::vector<std::uint8_t>> sides;
    if (j.contains("sides")) sides = j.at("sides").get<std::vector<std::uint8_t>>();
    return ColouredMultigraph(j.at("n_vertices").get<std::size_t>(),
                              j.at("n_colors").get<std::size_t>(), std::move(edges), *kind,
                              std::move(sides));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

inline std::string instance_to_string(const ColouredMultigraph& g) {
  return instance_to_json(g).dump() + "\n";
}

inline ColouredMultigraph instance_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
  return instance_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out << bytes;
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

inline ColouredMultigraph load_instance(const std::string& path) {
  return instance_from_string(read_file(path));
}

inline void save_instance(const ColouredMultigraph& g, const std::string& path) {
  write_file(path, instance_to_string(g));
}

}  // namespace rainbow
