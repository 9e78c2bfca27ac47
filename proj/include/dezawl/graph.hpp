#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dezawl/group.hpp"
#include "dezawl/group_ring.hpp"

namespace dezawl {

/// Loopless (di)graph on vertices 0..n-1 with one adjacency bitset per row.
class Graph {
 public:
  explicit Graph(std::size_t n = 0, bool directed = false)
      : n_(n), words_((n + 63) / 64), directed_(directed), bits_(n * words_, 0) {}

  std::size_t n() const { return n_; }
  bool directed() const { return directed_; }

  void add_edge(std::size_t u, std::size_t v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InvalidParameter("loops are not allowed");
    set_bit(u, v, true);
    if (!directed_) set_bit(v, u, true);
  }

  void remove_edge(std::size_t u, std::size_t v) {
    check_vertex(u);
    check_vertex(v);
    set_bit(u, v, false);
    if (!directed_) set_bit(v, u, false);
  }

  bool has_edge(std::size_t u, std::size_t v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }

  std::size_t degree(std::size_t u) const {
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += static_cast<std::size_t>(std::popcount(bits_[u * words_ + w]));
    return d;
  }

  std::vector<std::size_t> neighbors(std::size_t u) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < n_; ++v)
      if (has_edge(u, v)) out.push_back(v);
    return out;
  }

  /// |N(u) ∩ N(v)| by popcount over the row bitsets.
  std::size_t common_neighbors(std::size_t u, std::size_t v) const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < words_; ++w)
      c += static_cast<std::size_t>(std::popcount(bits_[u * words_ + w] & bits_[v * words_ + w]));
    return c;
  }

  /// Arcs for digraphs, unordered edges for graphs.
  std::size_t edge_count() const {
    std::size_t total = 0;
    for (std::size_t u = 0; u < n_; ++u) total += degree(u);
    return directed_ ? total : total / 2;
  }

  /// (u, v) with u < v for graphs, all arcs for digraphs, in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = directed_ ? 0 : u + 1; v < n_; ++v)
        if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
  }

  bool is_symmetric() const {
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (has_edge(u, v) != has_edge(v, u)) return false;
    return true;
  }

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (!labels.empty() && labels.size() != n_) throw InvalidParameter("one label per vertex required");
    labels_ = std::move(labels);
  }

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.n_ == y.n_ && x.directed_ == y.directed_ && x.bits_ == y.bits_ && x.labels_ == y.labels_;
  }

 private:
  void check_vertex(std::size_t u) const {
    if (u >= n_) throw InvalidParameter("vertex " + std::to_string(u) + " out of range");
  }
  void set_bit(std::size_t u, std::size_t v, bool on) {
    auto& word = bits_[u * words_ + v / 64];
    const std::uint64_t mask = std::uint64_t{1} << (v % 64);
    word = on ? (word | mask) : (word & ~mask);
  }

  std::size_t n_;
  std::size_t words_;
  bool directed_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::string> labels_;
};

/// Cay(G, S): vertex set G, arcs (g, sg). Undirected when S = S^{-1}.
/// Vertex i is the group element with index i.
inline Graph cayley_graph(const Group& g, const ElementSet& s) {
  const ElementSet conn = normalized(s);
  if (contains(conn, g.identity())) throw InvalidParameter("connection set contains the identity");
  const bool undirected = inverse_set(g, conn) == conn;
  Graph out(g.order(), !undirected);
  for (auto x : g.all())
    for (auto t : conn) out.add_edge(x.index, g.mul(t, x).index);
  out.set_labels(g.names());
  return out;
}

inline Graph complete_graph(std::size_t n) {
  Graph out(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) out.add_edge(u, v);
  return out;
}

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidParameter("cycle needs at least 3 vertices");
  Graph out(n);
  for (std::size_t u = 0; u < n; ++u) out.add_edge(u, (u + 1) % n);
  return out;
}

inline Graph path_graph(std::size_t n) {
  Graph out(n);
  for (std::size_t u = 0; u + 1 < n; ++u) out.add_edge(u, u + 1);
  return out;
}

/// The (l x m)-grid, i.e. the line graph of K_{l,m}: vertex (i, j) is
/// i * m + j, and two vertices are adjacent iff exactly one coordinate agrees.
inline Graph grid_graph(std::size_t l, std::size_t m) {
  if (l == 0 || m == 0) throw InvalidParameter("grid dimensions must be positive");
  Graph out(l * m);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
      for (std::size_t i2 = 0; i2 < l; ++i2)
        for (std::size_t j2 = 0; j2 < m; ++j2)
          if ((i == i2) != (j == j2)) out.add_edge(i * m + j, i2 * m + j2);
    }
  out.set_labels(std::move(labels));
  return out;
}

/// Vertex-disjoint union; vertices of `h` are shifted by g.n().
inline Graph disjoint_union(const Graph& g, const Graph& h) {
  if (g.directed() != h.directed()) throw InvalidParameter("cannot mix directed and undirected graphs");
  Graph out(g.n() + h.n(), g.directed());
  for (auto [u, v] : g.edges()) out.add_edge(u, v);
  for (auto [u, v] : h.edges()) out.add_edge(u + g.n(), v + g.n());
  return out;
}

/// Maximum BFS eccentricity; std::nullopt when some vertex is unreachable.
inline std::optional<std::size_t> diameter(const Graph& g) {
  std::size_t best = 0;
  std::vector<std::size_t> dist(g.n());
  for (std::size_t s = 0; s < g.n(); ++s) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<std::size_t>::max());
    dist[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    std::size_t reached = 1;
    while (!q.empty()) {
      const auto u = q.front();
      q.pop();
      for (std::size_t v = 0; v < g.n(); ++v)
        if (g.has_edge(u, v) && dist[v] == std::numeric_limits<std::size_t>::max()) {
          dist[v] = dist[u] + 1;
          best = std::max(best, dist[v]);
          ++reached;
          q.push(v);
        }
    }
    if (reached != g.n()) return std::nullopt;
  }
  return best;
}

inline std::optional<std::size_t> regular_degree(const Graph& g) {
  if (g.n() == 0) return 0;
  const auto d = g.degree(0);
  for (std::size_t u = 1; u < g.n(); ++u)
    if (g.degree(u) != d) return std::nullopt;
  return d;
}

/// Deza parameters (n, k, beta, alpha) with beta >= alpha.
struct DezaParameters {
  std::size_t n = 0, k = 0, beta = 0, alpha = 0;
  /// Only one common-neighbour count occurs (alpha == beta).
  bool degenerate = false;
  bool strongly_regular = false;
  std::optional<std::size_t> diameter;
  bool strictly = false;

  friend bool operator==(const DezaParameters&, const DezaParameters&) = default;
};

/// Either parameters or the reason the graph is not Deza, with a witness.
struct DezaVerdict {
  std::optional<DezaParameters> params;
  std::string reason;
  std::optional<std::pair<std::size_t, std::size_t>> witness;

  bool is_deza() const { return params.has_value(); }
};

inline DezaVerdict deza_parameters(const Graph& g) {
  if (g.directed() || !g.is_symmetric()) throw InvalidParameter("Deza check needs an undirected graph");
  DezaVerdict out;
  const auto k = regular_degree(g);
  if (!k) {
    out.reason = "not regular";
    for (std::size_t u = 1; u < g.n(); ++u)
      if (g.degree(u) != g.degree(0)) {
        out.witness = std::make_pair(std::size_t{0}, u);
        break;
      }
    return out;
  }

  std::set<std::size_t> values, adjacent_values, nonadjacent_values;
  std::vector<std::pair<std::size_t, std::size_t>> first_with;  // witness per new value
  for (std::size_t u = 0; u < g.n(); ++u)
    for (std::size_t v = u + 1; v < g.n(); ++v) {
      const auto c = g.common_neighbors(u, v);
      if (values.insert(c).second) first_with.emplace_back(u, v);
      (g.has_edge(u, v) ? adjacent_values : nonadjacent_values).insert(c);
      if (values.size() > 2) {
        out.reason = "more than two common-neighbour counts";
        out.witness = first_with.back();
        return out;
      }
    }

  DezaParameters p;
  p.n = g.n();
  p.k = *k;
  if (!values.empty()) {
    p.alpha = *values.begin();
    p.beta = *values.rbegin();
  }
  p.degenerate = values.size() <= 1;
  p.strongly_regular = adjacent_values.size() <= 1 && nonadjacent_values.size() <= 1;
  p.diameter = diameter(g);
  p.strictly = !p.strongly_regular && p.diameter == std::size_t{2};
  out.params = p;
  return out;
}

/// Divisible design parameters (n, k, alpha, beta, m, l). alpha is absent
/// when classes are singletons, beta when there is a single class.
struct DDGParameters {
  std::size_t n = 0, k = 0;
  std::optional<std::size_t> alpha, beta;
  std::size_t m = 0, l = 0;
  std::vector<std::vector<std::size_t>> partition;
};

struct DDGVerdict {
  std::optional<DDGParameters> params;
  std::string reason;
  std::optional<std::pair<std::size_t, std::size_t>> witness;

  bool is_ddg() const { return params.has_value(); }
};

inline DDGVerdict ddg_check(const Graph& g, const std::vector<std::vector<std::size_t>>& partition) {
  DDGVerdict out;
  if (g.directed()) throw InvalidParameter("DDG check needs an undirected graph");
  std::vector<std::size_t> cls(g.n(), SIZE_MAX);
  for (std::size_t i = 0; i < partition.size(); ++i)
    for (auto v : partition[i]) {
      if (v >= g.n() || cls[v] != SIZE_MAX) {
        out.reason = "partition is not a partition of the vertex set";
        return out;
      }
      cls[v] = i;
    }
  if (std::find(cls.begin(), cls.end(), SIZE_MAX) != cls.end()) {
    out.reason = "partition does not cover the vertex set";
    return out;
  }
  for (const auto& c : partition)
    if (c.size() != partition.front().size()) {
      out.reason = "classes have unequal sizes";
      return out;
    }
  const auto k = regular_degree(g);
  if (!k) {
    out.reason = "not regular";
    return out;
  }

  DDGParameters p;
  p.n = g.n();
  p.k = *k;
  p.m = partition.size();
  p.l = partition.empty() ? 0 : partition.front().size();
  for (std::size_t u = 0; u < g.n(); ++u)
    for (std::size_t v = u + 1; v < g.n(); ++v) {
      const auto c = g.common_neighbors(u, v);
      auto& slot = cls[u] == cls[v] ? p.alpha : p.beta;
      if (!slot) {
        slot = c;
      } else if (*slot != c) {
        out.reason = cls[u] == cls[v] ? "inconsistent count inside a class" : "inconsistent count between classes";
        out.witness = std::make_pair(u, v);
        return out;
      }
    }
  p.partition = partition;
  out.params = std::move(p);
  return out;
}

/// Right cosets of A ∪ cbA (a subgroup isomorphic to D_{2k}) in G_k
/// group, as lists of vertex indices of the Cayley graph.
inline std::vector<std::vector<std::size_t>> canonical_ddg_partition(const Group& g, int k) {
  const auto& p = detail::require_family_group(g, k);
  const ElementSet a = subgroup_generated(g, {p.a}).elements();
  const Subgroup d(g, set_union(a, left_mul(g, g.mul(p.c, p.b), a)));
  std::vector<std::vector<std::size_t>> out;
  for (const auto& coset : right_cosets(g, d)) {
    std::vector<std::size_t> cls;
    for (auto x : coset) cls.push_back(x.index);
    out.push_back(std::move(cls));
  }
  return out;
}

/// Γ_k = Cay(G, S) for G_k and its connection set.
inline Graph gamma_graph(const Group& g, int k) { return cayley_graph(g, connection_set(g, k)); }

}  // namespace dezawl
