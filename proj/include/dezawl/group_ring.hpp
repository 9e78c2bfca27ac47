#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dezawl/group.hpp"

namespace dezawl {

namespace detail {

inline std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("group ring coefficient overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("group ring coefficient overflow");
  return r;
}

}  // namespace detail

/// An element sum_g c_g g of the integer group ring ZG. Zero coefficients
/// are never stored.
class GroupRingElement {
 public:
  explicit GroupRingElement(const Group& g) : group_(&g) {}

  const Group& group() const { return *group_; }
  const std::map<std::uint32_t, std::int64_t>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  std::int64_t coefficient(Element x) const {
    auto it = coeffs_.find(x.index);
    return it == coeffs_.end() ? 0 : it->second;
  }

  void add_term(Element x, std::int64_t c) {
    if (c == 0) return;
    auto& slot = coeffs_[x.index];
    slot = detail::checked_add(slot, c);
    if (slot == 0) coeffs_.erase(x.index);
  }

  ElementSet support() const {
    ElementSet s;
    s.reserve(coeffs_.size());
    for (const auto& [x, c] : coeffs_) s.push_back(Element{x});
    return s;
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    require_same_group(o);
    for (const auto& [x, c] : o.coeffs_) add_term(Element{x}, c);
    return *this;
  }

  GroupRingElement& operator-=(const GroupRingElement& o) {
    require_same_group(o);
    for (const auto& [x, c] : o.coeffs_) add_term(Element{x}, detail::checked_mul(c, -1));
    return *this;
  }

  friend GroupRingElement operator+(GroupRingElement x, const GroupRingElement& y) { return x += y; }
  friend GroupRingElement operator-(GroupRingElement x, const GroupRingElement& y) { return x -= y; }

  friend GroupRingElement operator*(std::int64_t s, const GroupRingElement& x) {
    GroupRingElement out(x.group());
    for (const auto& [e, c] : x.coeffs_) out.add_term(Element{e}, detail::checked_mul(s, c));
    return out;
  }

  /// Convolution: the coefficient of g is sum over uv = g of x_u y_v.
  friend GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) {
    x.require_same_group(y);
    const Group& g = x.group();
    GroupRingElement out(g);
    for (const auto& [u, cu] : x.coeffs_)
      for (const auto& [v, cv] : y.coeffs_) out.add_term(g.mul(Element{u}, Element{v}), detail::checked_mul(cu, cv));
    return out;
  }

  friend bool operator==(const GroupRingElement& x, const GroupRingElement& y) {
    return x.group_ == y.group_ && x.coeffs_ == y.coeffs_;
  }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (const auto& [x, c] : coeffs_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(c) + "*" + group_->name(Element{x});
    }
    return s;
  }

 private:
  void require_same_group(const GroupRingElement& o) const {
    if (group_ != o.group_) throw InvalidParameter("group ring elements live over different groups");
  }

  const Group* group_;
  std::map<std::uint32_t, std::int64_t> coeffs_;
};

/// The simple quantity X̲ = sum of the elements of X.
inline GroupRingElement simple_quantity(const Group& g, const ElementSet& x) {
  GroupRingElement out(g);
  for (auto e : normalized(x)) {
    if (e.index >= g.order()) throw InvalidParameter("element outside the group");
    out.add_term(e, 1);
  }
  return out;
}

inline GroupRingElement simple_quantity(const Group& g, Element x) { return simple_quantity(g, ElementSet{x}); }

/// Splits G by coefficient value. The zero fiber (complement of the support)
/// is reported explicitly whenever it is nonempty.
inline std::map<std::int64_t, ElementSet> coefficient_fibers(const GroupRingElement& xi) {
  std::map<std::int64_t, ElementSet> out;
  const Group& g = xi.group();
  for (std::uint32_t x = 0; x < g.order(); ++x) out[xi.coefficient(Element{x})].push_back(Element{x});
  return out;
}

namespace detail {

inline const FamilyGenerators& require_family_group(const Group& g, int k) {
  const auto& gens = g.family_generators();
  if (!gens || gens->k != k)
    throw InvalidParameter("group was not built by build_paper_group(" + std::to_string(k) + ")");
  return *gens;
}

}  // namespace detail

/// Named subgroups and cosets of G_k that the closure proof and
/// the divisible design structure refer to.
struct FamilySubgroups {
  Subgroup A;   // <a>
  Subgroup C;   // <c>
  Subgroup H;   // <a> x| <b>
  Subgroup A1;  // <a^2>
  Subgroup L;   // A1 x| <cb>
  Subgroup U;   // <L, ca, da>
};

inline FamilySubgroups family_subgroups(const Group& g, int k) {
  const auto& p = detail::require_family_group(g, k);
  Subgroup L = subgroup_generated(g, {g.pow(p.a, 2), g.mul(p.c, p.b)});
  ElementSet u_gens = L.elements();
  u_gens.push_back(g.mul(p.c, p.a));
  u_gens.push_back(g.mul(p.d, p.a));
  Subgroup U = subgroup_generated(g, std::span<const Element>(u_gens));
  return FamilySubgroups{subgroup_generated(g, {p.a}),
                        subgroup_generated(g, {p.c}),
                        subgroup_generated(g, {p.a, p.b}),
                        subgroup_generated(g, {g.pow(p.a, 2)}),
                        std::move(L),
                        std::move(U)};
}

/// S = b(A \ {a^{-1}}) ∪ c(A ∪ {b}) ∪ {db, dcba^{-1}}.
inline ElementSet connection_set(const Group& g, int k) {
  const auto& p = detail::require_family_group(g, k);
  const ElementSet A = subgroup_generated(g, {p.a}).elements();
  const Element a_inv = g.inv(p.a);

  ElementSet s = left_mul(g, p.b, set_difference(A, ElementSet{a_inv}));
  s = set_union(s, left_mul(g, p.c, set_union(A, ElementSet{p.b})));
  s = set_union(s, normalized({g.mul(p.d, p.b), g.mul(g.mul(g.mul(p.d, p.c), p.b), a_inv)}));
  return s;
}

/// Outcome of comparing S̲² with the closed form
/// 2(k+1)e + 2(k-1)(A̲^# + cbA̲) + 2(b+c)A̲ + 2dC̲H̲.
struct SquareIdentityCheck {
  bool holds = false;
  /// First element (in canonical order) where the two sides differ.
  std::optional<Element> first_difference;
  std::int64_t lhs_coefficient = 0;
  std::int64_t rhs_coefficient = 0;
};

inline GroupRingElement square_closed_form(const Group& g, int k) {
  const auto& p = detail::require_family_group(g, k);
  const auto sub = family_subgroups(g, k);
  const auto A = simple_quantity(g, sub.A.elements());
  const auto e = simple_quantity(g, g.identity());
  const auto b = simple_quantity(g, p.b);
  const auto c = simple_quantity(g, p.c);
  const auto d = simple_quantity(g, p.d);

  return 2 * (k + 1) * e + 2 * (k - 1) * ((A - e) + c * b * A) + 2 * ((b + c) * A) +
         2 * (d * simple_quantity(g, sub.C.elements()) * simple_quantity(g, sub.H.elements()));
}

inline SquareIdentityCheck compare_square(const Group& g, const ElementSet& s, const GroupRingElement& rhs) {
  const auto sq = simple_quantity(g, s) * simple_quantity(g, s);
  SquareIdentityCheck out;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    const Element e{x};
    if (sq.coefficient(e) != rhs.coefficient(e)) {
      out.first_difference = e;
      out.lhs_coefficient = sq.coefficient(e);
      out.rhs_coefficient = rhs.coefficient(e);
      return out;
    }
  }
  out.holds = true;
  return out;
}

inline SquareIdentityCheck verify_eq3(const Group& g, int k) {
  return compare_square(g, connection_set(g, k), square_closed_form(g, k));
}

}  // namespace dezawl
