#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dezawl/graph.hpp"

namespace dezawl {

struct VertexColoring {
  std::vector<std::uint32_t> color;
  std::size_t num_colors = 0;
};

/// Colouring of V x V, row-major: color[u * n + v].
struct PairColoring {
  std::size_t n = 0;
  std::vector<std::uint32_t> color;
  std::size_t num_colors = 0;

  std::uint32_t at(std::size_t u, std::size_t v) const { return color[u * n + v]; }
};

struct CoherentConfiguration {
  PairColoring coloring;
  std::size_t rank = 0;
  std::size_t rounds = 0;
};

namespace detail {

/// Replaces arbitrary keys by contiguous ids in key order, so ids depend only
/// on the keys and never on iteration or hash order.
template <class Key>
std::pair<std::vector<std::uint32_t>, std::size_t> canonical_ids(const std::vector<Key>& keys) {
  std::map<Key, std::uint32_t> ids;
  for (const auto& k : keys) ids.emplace(k, 0);
  std::uint32_t next = 0;
  for (auto& [k, id] : ids) id = next++;
  std::vector<std::uint32_t> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) out[i] = ids.at(keys[i]);
  return {std::move(out), ids.size()};
}

}  // namespace detail

/// Colour refinement. A vertex's new colour is (old colour, sorted multiset
/// of out-neighbour colours[, sorted multiset of in-neighbour colours]).
inline VertexColoring wl1(const Graph& g) {
  const std::size_t n = g.n();
  VertexColoring c{std::vector<std::uint32_t>(n, 0), n ? 1u : 0u};
  std::vector<std::vector<std::size_t>> out(n), in(n);
  for (auto [u, v] : g.edges()) {
    out[u].push_back(v);
    in[v].push_back(u);
    if (!g.directed()) {
      out[v].push_back(u);
      in[u].push_back(v);
    }
  }
  using Key = std::tuple<std::uint32_t, std::vector<std::uint32_t>, std::vector<std::uint32_t>>;
  while (true) {
    std::vector<Key> keys(n);
    for (std::size_t u = 0; u < n; ++u) {
      std::vector<std::uint32_t> o, i;
      for (auto v : out[u]) o.push_back(c.color[v]);
      std::sort(o.begin(), o.end());
      if (g.directed()) {
        for (auto v : in[u]) i.push_back(c.color[v]);
        std::sort(i.begin(), i.end());
      }
      keys[u] = Key{c.color[u], std::move(o), std::move(i)};
    }
    auto [ids, count] = detail::canonical_ids(keys);
    const bool stable = count == c.num_colors;
    c.color = std::move(ids);
    c.num_colors = count;
    if (stable) return c;
  }
}

/// Diagonal, arc, non-arc (and reverse-arc / mutual arcs for digraphs),
/// renumbered contiguously.
inline PairColoring initial_pair_coloring(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<std::uint32_t> keys(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      keys[u * n + v] = u == v ? 0u : 1u + (g.has_edge(u, v) ? 1u : 0u) + (g.has_edge(v, u) ? 2u : 0u);
  auto [ids, count] = detail::canonical_ids(keys);
  return PairColoring{n, std::move(ids), count};
}

struct CoherenceWitness {
  std::string kind;
  std::pair<std::size_t, std::size_t> first, second;
  std::uint32_t color_r = 0, color_i = 0, color_j = 0;
  std::size_t count_first = 0, count_second = 0;
};

struct CoherenceCheck {
  bool ok = true;
  std::optional<CoherenceWitness> witness;
};

/// Re-checks a pair colouring for coherence without reusing the refinement
/// signatures: diagonal separation, transpose closure, and constancy of
/// every intersection number p^r_{ij} = |{w : c(u,w) = i, c(w,v) = j}|
/// computed as popcounts of colour-row and colour-column bitsets.
inline CoherenceCheck verify_coherence(const PairColoring& c) {
  const std::size_t n = c.n, r = c.num_colors;
  CoherenceCheck out;
  auto fail = [&](CoherenceWitness w) {
    out.ok = false;
    out.witness = std::move(w);
    return out;
  };

  std::vector<int> diagonal(r, -1);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const auto col = c.at(u, v);
      if (col >= r) return fail({"color id out of range", {u, v}, {u, v}, col});
      const int on_diag = u == v;
      if (diagonal[col] == -1) diagonal[col] = on_diag;
      if (diagonal[col] != on_diag) return fail({"diagonal and off-diagonal pairs share a color", {u, v}, {u, v}, col});
    }

  std::vector<std::optional<std::uint32_t>> transpose(r);
  std::vector<std::pair<std::size_t, std::size_t>> rep(r, {SIZE_MAX, SIZE_MAX});
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const auto col = c.at(u, v);
      if (rep[col].first == SIZE_MAX) rep[col] = {u, v};
      if (!transpose[col]) transpose[col] = c.at(v, u);
      if (*transpose[col] != c.at(v, u))
        return fail({"transpose of a color class is not a class", rep[col], {u, v}, col});
    }
  for (std::size_t col = 0; col < r; ++col)
    if (transpose[col] && *transpose[*transpose[col]] != col)
      return fail({"transpose is not an involution on colors", rep[col], rep[col], static_cast<std::uint32_t>(col)});

  const std::size_t words = (n + 63) / 64;
  // rows[i][u]: w with c(u, w) = i; cols[j][v]: w with c(w, v) = j
  std::vector<std::uint64_t> rows(r * n * words, 0), cols(r * n * words, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w = 0; w < n; ++w) {
      rows[(c.at(u, w) * n + u) * words + w / 64] |= std::uint64_t{1} << (w % 64);
      cols[(c.at(w, u) * n + u) * words + w / 64] |= std::uint64_t{1} << (w % 64);
    }
  auto count = [&](std::size_t i, std::size_t j, std::size_t u, std::size_t v) {
    std::size_t s = 0;
    const auto* a = &rows[(i * n + u) * words];
    const auto* b = &cols[(j * n + v) * words];
    for (std::size_t t = 0; t < words; ++t) s += static_cast<std::size_t>(std::popcount(a[t] & b[t]));
    return s;
  };
  std::vector<std::size_t> expected(r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t col = 0; col < r; ++col)
        if (rep[col].first != SIZE_MAX) expected[col] = count(i, j, rep[col].first, rep[col].second);
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) {
          const auto col = c.at(u, v);
          const auto got = count(i, j, u, v);
          if (got != expected[col])
            return fail({"intersection number not constant on a color class", rep[col], {u, v}, col,
                         static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), expected[col], got});
        }
    }
  return out;
}

/// 2-dimensional Weisfeiler-Leman refinement. The new colour of (u, v) is
/// (old colour, sorted multiset over w of (c(u,w), c(w,v))); ids are
/// assigned in key order each round. The stable colouring is the coherent
/// closure of the graph and is verified with verify_coherence before it is
/// returned.
inline CoherentConfiguration wl2(const Graph& g) {
  PairColoring c = initial_pair_coloring(g);
  const std::size_t n = c.n;
  using Key = std::pair<std::uint32_t, std::vector<std::uint64_t>>;
  std::size_t rounds = 0;
  std::vector<std::uint64_t> sig(n);
  while (true) {
    ++rounds;
    std::map<Key, std::uint32_t> ids;
    std::vector<std::map<Key, std::uint32_t>::iterator> slot(n * n);
    const std::uint64_t base = c.num_colors;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w = 0; w < n; ++w) sig[w] = c.at(u, w) * base + c.at(w, v);
        std::sort(sig.begin(), sig.end());
        slot[u * n + v] = ids.emplace(Key{c.at(u, v), sig}, 0).first;
      }
    std::uint32_t next = 0;
    for (auto& [k, id] : ids) id = next++;
    const bool stable = ids.size() == c.num_colors;
    for (std::size_t p = 0; p < n * n; ++p) c.color[p] = slot[p]->second;
    c.num_colors = ids.size();
    if (stable) break;
  }
  if (!verify_coherence(c).ok) throw std::logic_error("2-WL produced a coloring that is not coherent");
  return CoherentConfiguration{c, c.num_colors, rounds};
}

inline std::size_t wl_rank(const Graph& g) { return wl2(g).rank; }

/// Runs colour refinement on the disjoint union so both graphs share one
/// colour vocabulary, then compares colour-class sizes side by side.
inline bool wl1_distinguishes(const Graph& g1, const Graph& g2) {
  if (g1.n() != g2.n() || g1.directed() != g2.directed()) return true;
  const auto c = wl1(disjoint_union(g1, g2));
  std::vector<long long> balance(c.num_colors, 0);
  for (std::size_t v = 0; v < g1.n(); ++v) ++balance[c.color[v]];
  for (std::size_t v = 0; v < g2.n(); ++v) --balance[c.color[g1.n() + v]];
  return std::any_of(balance.begin(), balance.end(), [](long long b) { return b != 0; });
}

/// Set of pairs (u, v) of the given colour.
inline std::vector<std::pair<std::size_t, std::size_t>> color_class(const PairColoring& c, std::uint32_t col) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < c.n; ++u)
    for (std::size_t v = 0; v < c.n; ++v)
      if (c.at(u, v) == col) out.emplace_back(u, v);
  return out;
}

inline nlohmann::json to_json(const CoherentConfiguration& cc, bool compact = false) {
  nlohmann::json j;
  j["n"] = cc.coloring.n;
  j["rank"] = cc.rank;
  if (!compact) {
    j["colors"] = cc.coloring.color;
    return j;
  }
  auto runs = nlohmann::json::array();
  const auto& col = cc.coloring.color;
  for (std::size_t p = 0; p < col.size();) {
    std::size_t q = p;
    while (q < col.size() && col[q] == col[p]) ++q;
    runs.push_back({col[p], q - p});
    p = q;
  }
  j["runs"] = std::move(runs);
  return j;
}

inline CoherentConfiguration coherent_configuration_from_json(const nlohmann::json& j) {
  CoherentConfiguration cc;
  cc.coloring.n = j.at("n").get<std::size_t>();
  cc.rank = j.at("rank").get<std::size_t>();
  if (j.contains("colors")) {
    cc.coloring.color = j["colors"].get<std::vector<std::uint32_t>>();
  } else {
    for (const auto& run : j.at("runs"))
      cc.coloring.color.insert(cc.coloring.color.end(), run.at(1).get<std::size_t>(), run.at(0).get<std::uint32_t>());
  }
  if (cc.coloring.color.size() != cc.coloring.n * cc.coloring.n)
    throw std::invalid_argument("coherent configuration: color matrix has wrong size");
  cc.coloring.num_colors = cc.rank;
  return cc;
}

}  // namespace dezawl
