#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dezawl/group.hpp"
#include "dezawl/group_ring.hpp"

namespace dezawl {

/// A partition of a group into classes, the candidate basic sets of an
/// S-ring. Construction only checks that the classes partition G; whether
/// they satisfy the S-ring axioms is answered by check_sring.
///
/// Classes are numbered canonically by (size, minimal element), so two
/// equal partitions compare equal and print identically.
class SRingPartition {
 public:
  SRingPartition(std::shared_ptr<const Group> g, std::vector<ElementSet> classes) : group_(std::move(g)) {
    for (auto& c : classes) c = normalized(std::move(c));
    classes.erase(std::remove_if(classes.begin(), classes.end(), [](const ElementSet& c) { return c.empty(); }),
                  classes.end());
    std::sort(classes.begin(), classes.end(), [](const ElementSet& x, const ElementSet& y) {
      if (x.size() != y.size()) return x.size() < y.size();
      return x.front() < y.front();
    });
    class_of_.assign(group_->order(), UINT32_MAX);
    for (std::uint32_t id = 0; id < classes.size(); ++id)
      for (auto x : classes[id]) {
        if (x.index >= group_->order()) throw InvalidParameter("class element outside the group");
        if (class_of_[x.index] != UINT32_MAX) throw InvalidParameter("classes overlap at " + group_->name(x));
        class_of_[x.index] = id;
      }
    for (std::uint32_t x = 0; x < group_->order(); ++x)
      if (class_of_[x] == UINT32_MAX) throw InvalidParameter("classes do not cover " + group_->name(Element{x}));
    classes_ = std::move(classes);
  }

  /// Non-owning convenience; `g` must outlive the partition.
  SRingPartition(const Group& g, std::vector<ElementSet> classes)
      : SRingPartition(std::shared_ptr<const Group>(&g, [](const Group*) {}), std::move(classes)) {}

  static SRingPartition singletons(const Group& g) {
    std::vector<ElementSet> cls;
    for (auto x : g.all()) cls.push_back({x});
    return SRingPartition(g, std::move(cls));
  }

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  std::size_t rank() const { return classes_.size(); }
  const std::vector<ElementSet>& classes() const { return classes_; }
  std::uint32_t class_of(Element x) const { return class_of_.at(x.index); }
  const ElementSet& class_containing(Element x) const { return classes_[class_of(x)]; }

  bool is_union_of_classes(const ElementSet& x) const {
    for (auto e : x)
      for (auto y : class_containing(e))
        if (!contains(x, y)) return false;
    return true;
  }

  bool is_class(const ElementSet& x) const { return !x.empty() && class_containing(x.front()) == x; }

  /// True when every class of *this lies inside a class of `coarser`.
  bool refines(const SRingPartition& coarser) const {
    for (const auto& c : classes_) {
      const auto id = coarser.class_of(c.front());
      for (auto x : c)
        if (coarser.class_of(x) != id) return false;
    }
    return true;
  }

  friend bool operator==(const SRingPartition& x, const SRingPartition& y) { return x.classes_ == y.classes_; }

 private:
  std::shared_ptr<const Group> group_;
  std::vector<std::uint32_t> class_of_;
  std::vector<ElementSet> classes_;
};

struct SRingCheck {
  bool ok = true;
  std::string violation;
};

/// Checks the three S-ring axioms: {e} is a class, classes are closed under
/// inversion, and every product of class sums has a constant coefficient on
/// each class.
inline SRingCheck check_sring(const SRingPartition& p) {
  const Group& g = p.group();
  if (!p.is_class({g.identity()})) return {false, "axiom (1): {e} is not a class"};
  for (const auto& x : p.classes()) {
    const auto xi = inverse_set(g, x);
    if (!p.is_class(xi)) return {false, "axiom (2): inverse of " + format_set(g, x) + " is not a class"};
  }
  std::vector<std::int64_t> coef(g.order());
  for (const auto& x : p.classes())
    for (const auto& y : p.classes()) {
      std::fill(coef.begin(), coef.end(), 0);
      for (auto u : x)
        for (auto v : y) ++coef[g.mul(u, v).index];
      for (const auto& z : p.classes())
        for (auto w : z)
          if (coef[w.index] != coef[z.front().index])
            return {false, "axiom (3): product of " + format_set(g, x) + " and " + format_set(g, y) +
                               " is not constant on " + format_set(g, z)};
    }
  return {};
}

namespace detail {

/// Mutable partition used during closure. Every class carries a fresh id
/// whenever it is created, so a processed (id, id) pair never needs
/// revisiting: its product fibers are already respected by the partition.
class WorkingPartition {
 public:
  explicit WorkingPartition(std::size_t n) : class_of_(n, 0) {
    ElementSet all(n);
    for (std::uint32_t i = 0; i < n; ++i) all[i].index = i;
    members_.emplace(next_id_++, std::move(all));
  }

  /// Splits every class by the value of `label`. Returns true if anything split.
  template <class Label>
  bool refine(Label&& label) {
    bool changed = false;
    std::vector<std::uint64_t> ids;
    for (const auto& [id, m] : members_) ids.push_back(id);
    for (auto id : ids) {
      std::map<std::int64_t, ElementSet> parts;
      for (auto x : members_.at(id)) parts[label(x)].push_back(x);
      if (parts.size() < 2) continue;
      changed = true;
      members_.erase(id);
      for (auto& [l, part] : parts) {
        const auto nid = next_id_++;
        for (auto x : part) class_of_[x.index] = nid;
        members_.emplace(nid, std::move(part));
      }
    }
    return changed;
  }

  std::uint64_t id_of(Element x) const { return class_of_[x.index]; }
  const std::map<std::uint64_t, ElementSet>& members() const { return members_; }
  bool alive(std::uint64_t id) const { return members_.count(id) != 0; }

 private:
  std::vector<std::uint64_t> class_of_;
  std::map<std::uint64_t, ElementSet> members_;
  std::uint64_t next_id_ = 0;
};

}  // namespace detail

/// The WL-closure: the coarsest S-ring partition of G in which every marked
/// set is a union of classes.
///
/// Starting from the common refinement of {e}, each marked set and its
/// inverse, the partition is refined until it is stable under
///  (i) splitting each class by the classes of the inverses of its elements,
///  (ii) splitting by the coefficient fibers of X̲·Y̲ for every pair of classes.
/// Each split is forced in any S-ring containing the marked sets (fibers of
/// an element of the ring are unions of basic sets, and basic sets are
/// closed under inversion), so the fixed point is the smallest such S-ring.
/// A stable partition satisfies the axioms directly, which makes it an S-ring.
inline SRingPartition wl_closure(std::shared_ptr<const Group> gp, std::span<const ElementSet> marked) {
  const Group& g = *gp;
  const std::size_t n = g.order();
  detail::WorkingPartition w(n);

  w.refine([&](Element x) -> std::int64_t { return x == g.identity(); });
  for (const auto& m : marked) {
    std::vector<bool> in(n, false);
    for (auto x : m) {
      if (x.index >= n) throw InvalidParameter("marked set contains an element outside the group");
      in[x.index] = true;
    }
    w.refine([&](Element x) -> std::int64_t { return in[x.index]; });
    w.refine([&](Element x) -> std::int64_t { return in[g.inv(x).index]; });
  }

  std::set<std::pair<std::uint64_t, std::uint64_t>> done;
  std::vector<std::int64_t> coef(n);
  bool progress = true;
  while (progress) {
    progress = false;
    while (w.refine([&](Element x) -> std::int64_t { return static_cast<std::int64_t>(w.id_of(g.inv(x))); }))
      progress = true;

    std::vector<std::uint64_t> ids;
    for (const auto& [id, m] : w.members()) ids.push_back(id);
    for (auto xi : ids)
      for (auto yi : ids) {
        if (!w.alive(xi) || !w.alive(yi) || done.count({xi, yi})) continue;
        done.insert({xi, yi});
        std::fill(coef.begin(), coef.end(), 0);
        for (auto u : w.members().at(xi))
          for (auto v : w.members().at(yi)) ++coef[g.mul(u, v).index];
        if (w.refine([&](Element x) { return coef[x.index]; })) progress = true;
      }
  }

  std::vector<ElementSet> classes;
  for (const auto& [id, m] : w.members()) classes.push_back(m);
  return SRingPartition(std::move(gp), std::move(classes));
}

/// Non-owning convenience; `g` must outlive the result.
inline SRingPartition wl_closure(const Group& g, std::span<const ElementSet> marked) {
  return wl_closure(std::shared_ptr<const Group>(&g, [](const Group*) {}), marked);
}

inline SRingPartition wl_closure(const Group& g, std::initializer_list<ElementSet> marked) {
  return wl_closure(g, std::span<const ElementSet>(marked.begin(), marked.size()));
}

/// rad(X) = {g : Xg = gX = X}.
inline Subgroup radical(const Group& g, const ElementSet& x) {
  const ElementSet xs = normalized(x);
  ElementSet rad;
  for (auto h : g.all())
    if (right_mul(g, xs, h) == xs && left_mul(g, h, xs) == xs) rad.push_back(h);
  return Subgroup(g, std::move(rad));
}

inline bool is_a_subgroup(const SRingPartition& p, const Subgroup& h) { return p.is_union_of_classes(h.elements()); }

/// The S-ring induced on U/L by projecting the basic sets inside U.
inline SRingPartition section_sring(const SRingPartition& p, const Section& s) {
  if (!is_a_subgroup(p, s.upper)) throw StructuralError("upper subgroup of the section is not an A-subgroup");
  if (!is_a_subgroup(p, s.lower)) throw StructuralError("lower subgroup of the section is not an A-subgroup");
  const Group& q = *s.quotient;
  std::vector<std::optional<std::uint32_t>> owner(q.order());
  std::vector<ElementSet> classes;
  for (const auto& x : p.classes()) {
    if (!s.upper.contains(x.front())) continue;
    ElementSet img = s.project(x);
    std::optional<std::uint32_t> id = owner[img.front().index];
    if (id) {
      if (classes[*id] != img)
        throw StructuralError("projected basic sets overlap without coinciding on " + format_set(q, img));
      continue;
    }
    for (auto e : img) {
      if (owner[e.index]) throw StructuralError("projected basic sets overlap on " + q.name(e));
      owner[e.index] = static_cast<std::uint32_t>(classes.size());
    }
    classes.push_back(std::move(img));
  }
  return SRingPartition(s.quotient, std::move(classes));
}

/// All A-subgroups. Every A-subgroup is generated by the basic sets it
/// contains, so joining basic sets onto known A-subgroups reaches all of them.
inline std::vector<Subgroup> a_subgroups(const SRingPartition& p) {
  const Group& g = p.group();
  std::vector<Subgroup> found{trivial_subgroup(g)};
  std::set<ElementSet> seen{found.front().elements()};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& x : p.classes()) {
      if (found[i].contains(x.front())) continue;
      ElementSet gens = set_union(found[i].elements(), x);
      Subgroup h = subgroup_generated(g, std::span<const Element>(gens));
      if (seen.insert(h.elements()).second) found.push_back(std::move(h));
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& x, const Subgroup& y) {
    if (x.order() != y.order()) return x.order() < y.order();
    return x.elements() < y.elements();
  });
  return found;
}

/// A generalized wreath decomposition A = A_U wr_{U/L} A_{G/L}.
struct WreathDecomposition {
  Section section;  // U/L
  std::size_t rank_u = 0;
  std::size_t rank_quotient = 0;
  std::size_t rank_section = 0;
  std::size_t rank_total = 0;

  bool rank_identity_holds() const { return rank_total + rank_section == rank_u + rank_quotient; }
};

/// Every nontrivial (U, L) with L normal in G, {e} < L <= U < G, both
/// A-subgroups, and L inside rad(X) for each basic set X outside U.
inline std::vector<WreathDecomposition> detect_wreath(const SRingPartition& p) {
  const Group& g = p.group();
  const auto subs = a_subgroups(p);
  std::vector<WreathDecomposition> out;
  for (const auto& l : subs) {
    if (l.order() == 1 || !is_normal(g, l)) continue;
    const Section g_mod_l = make_section(g, whole_group(g), l);
    std::optional<std::size_t> rank_q;
    for (const auto& u : subs) {
      if (u.order() == g.order() || !l.is_subgroup_of(u)) continue;
      bool ok = true;
      for (const auto& x : p.classes()) {
        if (u.contains(x.front())) continue;
        for (auto h : l.elements()) {
          if (right_mul(g, x, h) != x || left_mul(g, h, x) != x) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (!ok) continue;
      if (!rank_q) rank_q = section_sring(p, g_mod_l).rank();
      Section u_mod_l = make_section(g, u, l);
      const std::size_t rank_s = section_sring(p, u_mod_l).rank();
      const auto rank_u = static_cast<std::size_t>(std::count_if(
          p.classes().begin(), p.classes().end(), [&](const ElementSet& x) { return u.contains(x.front()); }));
      out.push_back(WreathDecomposition{std::move(u_mod_l), rank_u, *rank_q, rank_s, p.rank()});
    }
  }
  return out;
}

/// One step of the closure argument for Γ_k: a set computed from
/// S by ring and set operations, compared with what the proof says it is
/// and with how it sits in the computed closure.
struct TraceAssertion {
  std::string name;
  std::string expected;
  std::string observed;
  bool holds = false;
};

struct ClosureTrace {
  int k = 0;
  std::size_t rank = 0;
  bool all_singletons = false;
  std::vector<TraceAssertion> assertions;

  bool all_hold() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const TraceAssertion& a) { return a.holds; });
  }
  const TraceAssertion* find(const std::string& name) const {
    for (const auto& a : assertions)
      if (a.name == name) return &a;
    return nullptr;
  }
};

/// Replays the closure argument against the computed WL-closure of S:
/// V = fiber of 2(k-1) in S̲², {cb} = V ∩ S, {ca} = (cbS \ Scb) ∩ S,
/// {da^{-1}} = (cbS \ Scb) \ {ca}, {a^2} = {ca}{ca}, the singletons of A1,
/// and for even k {da}, Lc, La, Ld and Lcda.
inline ClosureTrace closure_trace(const Group& g, int k) {
  const auto& p = detail::require_family_group(g, k);
  const auto sub = family_subgroups(g, k);
  const ElementSet s = connection_set(g, k);
  const auto closure = wl_closure(g, {s});

  ClosureTrace tr;
  tr.k = k;
  tr.rank = closure.rank();
  tr.all_singletons = closure.rank() == g.order();

  auto derived = [&](std::string name, const ElementSet& computed, const ElementSet& expected) {
    tr.assertions.push_back({std::move(name), format_set(g, expected), format_set(g, computed), computed == expected});
  };
  auto singleton = [&](std::string name, Element x) {
    const auto& cls = closure.class_containing(x);
    tr.assertions.push_back({std::move(name), format_set(g, {x}), format_set(g, cls), cls.size() == 1});
  };
  auto exact_class = [&](std::string name, const ElementSet& x) {
    const auto& cls = closure.class_containing(x.front());
    tr.assertions.push_back({std::move(name), format_set(g, x), format_set(g, cls), cls == x});
  };
  auto a_set = [&](std::string name, const ElementSet& x) {
    tr.assertions.push_back({std::move(name), format_set(g, x),
                             closure.is_union_of_classes(x) ? "union of classes" : "not a union of classes",
                             closure.is_union_of_classes(x)});
  };

  const Element cb = g.mul(p.c, p.b);
  const Element ca = g.mul(p.c, p.a);
  const Element da = g.mul(p.d, p.a);
  const Element da_inv = g.mul(p.d, g.inv(p.a));
  const Element a2 = g.pow(p.a, 2);

  const auto sq = simple_quantity(g, s) * simple_quantity(g, s);
  const auto fibers = coefficient_fibers(sq);
  const auto vit = fibers.find(2 * (k - 1));
  const ElementSet v = vit == fibers.end() ? ElementSet{} : vit->second;
  const ElementSet a_sharp = set_difference(sub.A.elements(), {g.identity()});
  derived("V = A^# ∪ cbA", v, set_union(a_sharp, left_mul(g, cb, sub.A.elements())));
  a_set("V is an A-set", v);

  const ElementSet cbs = left_mul(g, cb, s);
  const ElementSet scb = right_mul(g, s, cb);
  const ElementSet s1 = set_intersection(set_difference(cbs, scb), s);
  derived("V ∩ S = {cb}", set_intersection(v, s), {cb});
  derived("S1 = (cbS \\ Scb) ∩ S = {ca}", s1, {ca});
  derived("S2 = (cbS \\ Scb) \\ S1 = {da^-1}", set_difference(set_difference(cbs, scb), s1), {da_inv});
  derived("S1 S1 = {a^2}", product_set(g, s1, s1), {a2});

  singleton("{cb} is a basic set", cb);
  singleton("{ca} is a basic set", ca);
  singleton("{da^-1} is a basic set", da_inv);
  singleton("{a^2} is a basic set", a2);
  bool a1_singletons = true;
  for (auto x : sub.A1.elements()) a1_singletons = a1_singletons && closure.class_containing(x).size() == 1;
  tr.assertions.push_back({"A1 = <a^2> consists of basic singletons", format_set(g, sub.A1.elements()),
                           a1_singletons ? "all singletons" : "not all singletons", a1_singletons});

  if (k % 2 == 0) {
    singleton("{da} is a basic set", da);
    bool u_singletons = true;
    for (auto x : sub.U.elements()) u_singletons = u_singletons && closure.class_containing(x).size() == 1;
    tr.assertions.push_back({"U = <L, ca, da> consists of basic singletons", "|U| = " + std::to_string(sub.U.order()),
                             u_singletons ? "all singletons" : "not all singletons", u_singletons});
    const ElementSet lc = right_mul(g, sub.L.elements(), p.c);
    derived("S \\ U = Lc", set_difference(s, sub.U.elements()), lc);
    exact_class("Lc is a basic set", lc);
    exact_class("La is a basic set", right_mul(g, sub.L.elements(), p.a));
    exact_class("Ld is a basic set", right_mul(g, sub.L.elements(), p.d));
    exact_class("Lcda is a basic set", right_mul(g, sub.L.elements(), g.mul(g.mul(p.c, p.d), p.a)));
  } else {
    tr.assertions.push_back({"closure is the full group ring", "rank " + std::to_string(g.order()),
                             "rank " + std::to_string(closure.rank()), tr.all_singletons});
  }
  return tr;
}

}  // namespace dezawl
