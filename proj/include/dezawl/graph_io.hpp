#pragma once

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dezawl/graph.hpp"

namespace dezawl {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header line `n m`, then one `u v` line per edge (u < v, 0-based).
inline std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  const auto edges = g.edges();
  os << g.n() << ' ' << edges.size() << '\n';
  for (auto [u, v] : edges) os << u << ' ' << v << '\n';
  return os.str();
}

inline Graph from_edge_list(const std::string& text) {
  std::istringstream is(text);
  long long n = -1, m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) throw ParseError("edge list: bad header, expected `n m`");
  Graph g(static_cast<std::size_t>(n));
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(is >> u >> v)) throw ParseError("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw ParseError("edge list: invalid edge " + std::to_string(u) + " " + std::to_string(v));
    if (g.has_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v)))
      throw ParseError("edge list: duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  std::string rest;
  if (is >> rest) throw ParseError("edge list: trailing data after " + std::to_string(m) + " edges");
  return g;
}

inline std::string to_dot(const Graph& g, const std::string& name = "G") {
  std::ostringstream os;
  const char* arrow = g.directed() ? " -> " : " -- ";
  os << (g.directed() ? "digraph " : "graph ") << name << " {\n";
  for (std::size_t v = 0; v < g.n(); ++v) {
    os << "  " << v;
    if (!g.labels().empty()) os << " [label=\"" << g.labels()[v] << "\"]";
    os << ";\n";
  }
  for (auto [u, v] : g.edges()) os << "  " << u << arrow << v << ";\n";
  os << "}\n";
  return os.str();
}

inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n();
  j["directed"] = g.directed();
  j["labels"] = g.labels();
  auto edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

inline std::string to_json(const Graph& g) { return graph_to_json(g).dump(2) + "\n"; }

inline Graph graph_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    Graph g(n, j.value("directed", false));
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("json graph: edge must be a pair");
      const auto u = e[0].get<std::size_t>(), v = e[1].get<std::size_t>();
      if (u >= n || v >= n || u == v) throw ParseError("json graph: invalid edge");
      g.add_edge(u, v);
    }
    if (j.contains("labels")) g.set_labels(j["labels"].get<std::vector<std::string>>());
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("json graph: ") + e.what());
  } catch (const InvalidParameter& e) {
    throw ParseError(std::string("json graph: ") + e.what());
  }
}

inline Graph from_json(const std::string& text) {
  try {
    return graph_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json graph: ") + e.what());
  }
}

/// JSON when the first non-blank character is '{', edge list otherwise.
inline Graph load_graph(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{' ? from_json(text) : from_edge_list(text);
  }
  throw ParseError("empty graph file");
}

}  // namespace dezawl
