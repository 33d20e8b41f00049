#pragma once

// Graph <-> JSON. Schema:
//   {"vertex_count": int, "edges": [{"label": string, "src": int, "dst": int}]}
// Array order is the edge order. Labels are all-or-nothing.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "kgraph/graph.hpp"

namespace kgraph {

namespace detail {

inline std::size_t line_of_offset(const std::string &text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(),
                            text.begin() + static_cast<std::ptrdiff_t>(byte),
                            '\n'));
}

} // namespace detail

[[nodiscard]] inline nlohmann::json graph_to_json(const Graph &g) {
  nlohmann::json edges = nlohmann::json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    nlohmann::json item;
    if (g.has_labels())
      item["label"] = g.labels()[e];
    item["src"] = g.edges()[e].src;
    item["dst"] = g.edges()[e].dst;
    edges.push_back(std::move(item));
  }
  return {{"vertex_count", g.vertex_count()}, {"edges", std::move(edges)}};
}

[[nodiscard]] inline Graph graph_from_json(const nlohmann::json &j) {
  try {
    if (!j.is_object())
      throw InvalidGraph("graph document must be an object");
    const auto vertex_count = j.at("vertex_count").get<std::size_t>();
    std::vector<Edge> edges;
    std::vector<std::string> labels;
    std::size_t labeled = 0;
    for (const auto &item : j.at("edges")) {
      edges.push_back(
          {item.at("src").get<VertexId>(), item.at("dst").get<VertexId>()});
      if (item.contains("label")) {
        labels.push_back(item.at("label").get<std::string>());
        ++labeled;
      }
    }
    if (labeled != 0 && labeled != edges.size())
      throw InvalidGraph("either every edge has a label or none does");
    return Graph(vertex_count, std::move(edges), std::move(labels));
  } catch (const nlohmann::json::exception &ex) {
    throw InvalidGraph(ex.what());
  }
}

/// Parse graph JSON text; syntax errors report the line number.
[[nodiscard]] inline Graph parse_graph(const std::string &text,
                                       const std::string &origin = "<input>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &ex) {
    throw InvalidGraph(origin + ":" +
                       std::to_string(detail::line_of_offset(text, ex.byte)) +
                       ": " + ex.what());
  }
  return graph_from_json(j);
}

[[nodiscard]] inline Graph load_graph(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidGraph("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str(), path);
}

} // namespace kgraph
