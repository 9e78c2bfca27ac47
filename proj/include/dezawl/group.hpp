#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <compare>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dezawl {

/// Raised when a caller-supplied parameter is outside the documented domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an object violates a structural precondition (non-normal
/// subgroup, a subgroup that is not a union of classes, ...).
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Dense index of an element inside its parent group.
struct Element {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

/// Sorted, duplicate-free list of elements.
using ElementSet = std::vector<Element>;

inline ElementSet normalized(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline bool contains(const ElementSet& s, Element x) {
  return std::binary_search(s.begin(), s.end(), x);
}

inline ElementSet set_union(const ElementSet& x, const ElementSet& y) {
  ElementSet out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

inline ElementSet set_intersection(const ElementSet& x, const ElementSet& y) {
  ElementSet out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

inline ElementSet set_difference(const ElementSet& x, const ElementSet& y) {
  ElementSet out;
  std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

/// Generator handles of D_{2k} x C2 x C2 in the normal form a^i b^j c^l d^m.
struct FamilyGenerators {
  int k = 0;
  Element a, b, c, d;
};

class Group;
inline Group build_paper_group(int k);

/// A finite group given by its full multiplication table.
///
/// Elements are the indices 0..order()-1. The table is immutable after
/// construction, so a Group may be shared freely between threads.
class Group {
 public:
  /// Builds a group from a row-major multiplication table. Identity and
  /// inverses are derived and validated; associativity is not checked here
  /// (see is_associative).
  static Group from_table(std::size_t order, std::vector<std::uint32_t> table,
                          std::vector<std::string> names) {
    if (order == 0) throw InvalidParameter("group order must be positive");
    if (table.size() != order * order) throw InvalidParameter("multiplication table has wrong size");
    if (names.size() != order) throw InvalidParameter("one name per element required");
    for (auto v : table)
      if (v >= order) throw InvalidParameter("multiplication table entry out of range");

    Group g;
    g.order_ = order;
    g.mult_ = std::move(table);
    g.names_ = std::move(names);

    std::optional<std::uint32_t> id;
    for (std::uint32_t e = 0; e < order && !id; ++e) {
      bool ok = true;
      for (std::uint32_t x = 0; x < order && ok; ++x)
        ok = g.mult_[e * order + x] == x && g.mult_[x * order + e] == x;
      if (ok) id = e;
    }
    if (!id) throw StructuralError("multiplication table has no two-sided identity");
    g.identity_ = *id;

    g.inv_.assign(order, 0);
    for (std::uint32_t x = 0; x < order; ++x) {
      bool found = false;
      for (std::uint32_t y = 0; y < order && !found; ++y) {
        if (g.mult_[x * order + y] == *id && g.mult_[y * order + x] == *id) {
          g.inv_[x] = y;
          found = true;
        }
      }
      if (!found) throw StructuralError("element " + g.names_[x] + " has no two-sided inverse");
    }
    return g;
  }

  std::size_t order() const { return order_; }
  Element identity() const { return Element{identity_}; }
  Element mul(Element x, Element y) const { return Element{mult_[x.index * order_ + y.index]}; }
  Element inv(Element x) const { return Element{inv_[x.index]}; }
  const std::string& name(Element x) const { return names_[x.index]; }
  const std::vector<std::string>& names() const { return names_; }

  Element pow(Element x, long long e) const {
    if (e < 0) {
      x = inv(x);
      e = -e;
    }
    Element r = identity();
    for (long long i = 0; i < e; ++i) r = mul(r, x);
    return r;
  }

  std::optional<Element> find(const std::string& name) const {
    for (std::uint32_t i = 0; i < order_; ++i)
      if (names_[i] == name) return Element{i};
    return std::nullopt;
  }

  ElementSet all() const {
    ElementSet s(order_);
    for (std::uint32_t i = 0; i < order_; ++i) s[i].index = i;
    return s;
  }

  /// Present only for groups made by build_paper_group.
  const std::optional<FamilyGenerators>& family_generators() const { return family_; }

 private:
  friend Group build_paper_group(int k);

  std::size_t order_ = 0;
  std::vector<std::uint32_t> mult_;
  std::vector<std::uint32_t> inv_;
  std::uint32_t identity_ = 0;
  std::vector<std::string> names_;
  std::optional<FamilyGenerators> family_;
};

namespace detail {

inline std::string normal_form_name(int i, int j, int l, int m) {
  std::string s;
  if (i == 1) s += "a";
  if (i > 1) s += "a^" + std::to_string(i);
  if (j) s += "b";
  if (l) s += "c";
  if (m) s += "d";
  return s.empty() ? "e" : s;
}

}  // namespace detail

/// G = (<a> x| <b>) x <c> x <d> with |a| = k, |b| = |c| = |d| = 2 and
/// bab = a^{-1}. Elements are ordered lexicographically on the normal form
/// exponents (i, j, l, m) of a^i b^j c^l d^m.
inline Group build_paper_group(int k) {
  if (k < 3) throw InvalidParameter("k must be at least 3, got " + std::to_string(k));
  const auto order = static_cast<std::size_t>(8 * k);
  auto index = [](int i, int j, int l, int m) {
    return static_cast<std::uint32_t>(((i * 2 + j) * 2 + l) * 2 + m);
  };

  std::vector<std::uint32_t> table(order * order);
  std::vector<std::string> names(order);
  for (int i1 = 0; i1 < k; ++i1)
    for (int j1 = 0; j1 < 2; ++j1)
      for (int l1 = 0; l1 < 2; ++l1)
        for (int m1 = 0; m1 < 2; ++m1) {
          const auto x = index(i1, j1, l1, m1);
          names[x] = detail::normal_form_name(i1, j1, l1, m1);
          for (int i2 = 0; i2 < k; ++i2)
            for (int j2 = 0; j2 < 2; ++j2)
              for (int l2 = 0; l2 < 2; ++l2)
                for (int m2 = 0; m2 < 2; ++m2) {
                  // b a^i = a^{-i} b, c and d central
                  const int i = ((i1 + (j1 ? -i2 : i2)) % k + k) % k;
                  table[x * order + index(i2, j2, l2, m2)] = index(i, j1 ^ j2, l1 ^ l2, m1 ^ m2);
                }
        }

  Group g = Group::from_table(order, std::move(table), std::move(names));
  g.family_ = FamilyGenerators{k, Element{index(1, 0, 0, 0)}, Element{index(0, 1, 0, 0)},
                             Element{index(0, 0, 1, 0)}, Element{index(0, 0, 0, 1)}};
  return g;
}

inline Group cyclic_group(std::size_t n) {
  if (n == 0) throw InvalidParameter("cyclic group order must be positive");
  std::vector<std::uint32_t> table(n * n);
  std::vector<std::string> names(n);
  for (std::size_t x = 0; x < n; ++x) {
    names[x] = x == 0 ? "e" : (x == 1 ? "g" : "g^" + std::to_string(x));
    for (std::size_t y = 0; y < n; ++y) table[x * n + y] = static_cast<std::uint32_t>((x + y) % n);
  }
  return Group::from_table(n, std::move(table), std::move(names));
}

/// Dihedral group of order 2m: r^i s^j with s r = r^{-1} s.
inline Group dihedral_group(std::size_t m) {
  if (m == 0) throw InvalidParameter("dihedral group needs m >= 1");
  const std::size_t n = 2 * m;
  std::vector<std::uint32_t> table(n * n);
  std::vector<std::string> names(n);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t j1 = 0; j1 < 2; ++j1) {
      const std::size_t x = i1 * 2 + j1;
      std::string nm = i1 == 0 ? "" : (i1 == 1 ? "r" : "r^" + std::to_string(i1));
      if (j1) nm += "s";
      names[x] = nm.empty() ? "e" : nm;
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j2 = 0; j2 < 2; ++j2) {
          const std::size_t i = j1 ? (i1 + m - i2) % m : (i1 + i2) % m;
          table[x * n + i2 * 2 + j2] = static_cast<std::uint32_t>(i * 2 + (j1 ^ j2));
        }
    }
  return Group::from_table(n, std::move(table), std::move(names));
}

/// Elements (x, y) indexed x * |H| + y.
inline Group direct_product(const Group& g, const Group& h) {
  const std::size_t n = g.order() * h.order();
  std::vector<std::uint32_t> table(n * n);
  std::vector<std::string> names(n);
  for (std::uint32_t x1 = 0; x1 < g.order(); ++x1)
    for (std::uint32_t y1 = 0; y1 < h.order(); ++y1) {
      const std::size_t p = x1 * h.order() + y1;
      names[p] = "(" + g.name(Element{x1}) + "," + h.name(Element{y1}) + ")";
      for (std::uint32_t x2 = 0; x2 < g.order(); ++x2)
        for (std::uint32_t y2 = 0; y2 < h.order(); ++y2) {
          const auto x = g.mul(Element{x1}, Element{x2}).index;
          const auto y = h.mul(Element{y1}, Element{y2}).index;
          table[p * n + x2 * h.order() + y2] = static_cast<std::uint32_t>(x * h.order() + y);
        }
    }
  return Group::from_table(n, std::move(table), std::move(names));
}

inline bool is_associative(const Group& g) {
  const auto n = static_cast<std::uint32_t>(g.order());
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      const Element xy = g.mul(Element{x}, Element{y});
      for (std::uint32_t z = 0; z < n; ++z)
        if (g.mul(xy, Element{z}) != g.mul(Element{x}, g.mul(Element{y}, Element{z}))) return false;
    }
  return true;
}

inline bool is_associative_sampled(const Group& g, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(g.order() - 1));
  for (std::size_t t = 0; t < samples; ++t) {
    const Element x{pick(rng)}, y{pick(rng)}, z{pick(rng)};
    if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z))) return false;
  }
  return true;
}

// ---- set arithmetic inside a group ----

inline ElementSet product_set(const Group& g, const ElementSet& x, const ElementSet& y) {
  ElementSet out;
  out.reserve(x.size() * y.size());
  for (auto u : x)
    for (auto v : y) out.push_back(g.mul(u, v));
  return normalized(std::move(out));
}

inline ElementSet left_mul(const Group& g, Element h, const ElementSet& x) {
  return product_set(g, ElementSet{h}, x);
}

inline ElementSet right_mul(const Group& g, const ElementSet& x, Element h) {
  return product_set(g, x, ElementSet{h});
}

inline ElementSet inverse_set(const Group& g, const ElementSet& x) {
  ElementSet out;
  out.reserve(x.size());
  for (auto u : x) out.push_back(g.inv(u));
  return normalized(std::move(out));
}

inline std::string format_set(const Group& g, const ElementSet& x) {
  std::string s = "{";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ", ";
    s += g.name(x[i]);
  }
  return s + "}";
}

/// A subgroup stored as a sorted element list plus a membership bitmap.
class Subgroup {
 public:
  Subgroup() = default;

  /// Validates closure; throws StructuralError if `elements` is not a subgroup.
  Subgroup(const Group& parent, ElementSet elements)
      : parent_(&parent), elements_(normalized(std::move(elements))), member_(parent.order(), false) {
    for (auto x : elements_) {
      if (x.index >= parent.order()) throw InvalidParameter("element outside the parent group");
      member_[x.index] = true;
    }
    if (elements_.empty() || !member_[parent.identity().index])
      throw StructuralError("subgroup must contain the identity");
    for (auto x : elements_) {
      if (!member_[parent.inv(x).index]) throw StructuralError("set is not closed under inverses");
      for (auto y : elements_)
        if (!member_[parent.mul(x, y).index]) throw StructuralError("set is not closed under products");
    }
  }

  const Group& parent() const { return *parent_; }
  const ElementSet& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(Element x) const { return x.index < member_.size() && member_[x.index]; }

  bool is_subgroup_of(const Subgroup& other) const {
    return std::all_of(elements_.begin(), elements_.end(), [&](Element x) { return other.contains(x); });
  }

  friend bool operator==(const Subgroup& x, const Subgroup& y) { return x.elements_ == y.elements_; }

 private:
  const Group* parent_ = nullptr;
  ElementSet elements_;
  std::vector<bool> member_;
};

/// Smallest subgroup containing `gens`, by orbit closure under right
/// multiplication by the generators.
inline Subgroup subgroup_generated(const Group& g, std::span<const Element> gens) {
  std::vector<bool> seen(g.order(), false);
  std::vector<Element> frontier{g.identity()};
  seen[g.identity().index] = true;
  ElementSet elems{g.identity()};
  while (!frontier.empty()) {
    const Element x = frontier.back();
    frontier.pop_back();
    for (auto s : gens) {
      const Element y = g.mul(x, s);
      if (!seen[y.index]) {
        seen[y.index] = true;
        elems.push_back(y);
        frontier.push_back(y);
      }
    }
  }
  // Finite group: closure under multiplication by generators already gives
  // inverses (s^{-1} = s^{|s|-1}).
  return Subgroup(g, std::move(elems));
}

inline Subgroup subgroup_generated(const Group& g, std::initializer_list<Element> gens) {
  return subgroup_generated(g, std::span<const Element>(gens.begin(), gens.size()));
}

inline Subgroup trivial_subgroup(const Group& g) { return Subgroup(g, ElementSet{g.identity()}); }
inline Subgroup whole_group(const Group& g) { return Subgroup(g, g.all()); }

/// Normal in `g` when every conjugate of every element of `h` lies in `h`.
inline bool is_normal(const Group& g, const Subgroup& h) {
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    const Element gx{x};
    for (auto y : h.elements())
      if (!h.contains(g.mul(g.mul(gx, y), g.inv(gx)))) return false;
  }
  return true;
}

/// Normality of `l` inside the (smaller) group `u`.
inline bool is_normal_in(const Group& g, const Subgroup& l, const Subgroup& u) {
  if (!l.is_subgroup_of(u)) return false;
  for (auto x : u.elements())
    for (auto y : l.elements())
      if (!l.contains(g.mul(g.mul(x, y), g.inv(x)))) return false;
  return true;
}

/// Right cosets H g, ordered by their minimal element.
inline std::vector<ElementSet> right_cosets(const Group& g, const Subgroup& h) {
  std::vector<bool> seen(g.order(), false);
  std::vector<ElementSet> out;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ElementSet coset = right_mul(g, h.elements(), Element{x});
    for (auto y : coset) seen[y.index] = true;
    out.push_back(std::move(coset));
  }
  return out;
}

/// A section U/L: the quotient group together with the canonical projection.
struct Section {
  Subgroup upper;
  Subgroup lower;
  std::shared_ptr<const Group> quotient;
  /// projection[x] is the quotient element of x for x in U; unused entries
  /// (x outside U) hold std::nullopt.
  std::vector<std::optional<Element>> projection;
  /// representatives[q] is the minimal element of the coset q.
  ElementSet representatives;

  Element project(Element x) const {
    const auto& p = projection.at(x.index);
    if (!p) throw InvalidParameter("element lies outside the upper subgroup of the section");
    return *p;
  }

  ElementSet project(const ElementSet& x) const {
    ElementSet out;
    out.reserve(x.size());
    for (auto e : x) out.push_back(project(e));
    return normalized(std::move(out));
  }
};

/// Builds U/L. Coset representatives are the minimal element index in each
/// coset, and quotient elements are numbered in representative order.
inline Section make_section(const Group& g, const Subgroup& u, const Subgroup& l) {
  if (!is_normal_in(g, l, u)) throw StructuralError("lower subgroup is not normal in the upper subgroup");
  std::vector<std::optional<Element>> proj(g.order());
  ElementSet reps;
  for (auto x : u.elements()) {
    if (proj[x.index]) continue;
    const auto q = Element{static_cast<std::uint32_t>(reps.size())};
    reps.push_back(x);
    for (auto y : l.elements()) proj[g.mul(x, y).index] = q;
  }
  const std::size_t m = reps.size();
  std::vector<std::uint32_t> table(m * m);
  std::vector<std::string> names(m);
  for (std::size_t p = 0; p < m; ++p) {
    names[p] = g.name(reps[p]);
    for (std::size_t q = 0; q < m; ++q) table[p * m + q] = proj[g.mul(reps[p], reps[q]).index]->index;
  }
  return Section{u, l, std::make_shared<const Group>(Group::from_table(m, std::move(table), std::move(names))),
                 std::move(proj), std::move(reps)};
}

}  // namespace dezawl
