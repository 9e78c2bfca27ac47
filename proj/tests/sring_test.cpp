#include <gtest/gtest.h>

#include <random>

#include "dezawl/sring.hpp"

using namespace dezawl;

namespace {

std::vector<ElementSet> coarse_classes(const Group& g) {
  return {{g.identity()}, set_difference(g.all(), {g.identity()})};
}

}  // namespace

TEST(IsSring, SingletonsAndRankTwo) {
  const auto g = build_paper_group(3);
  const auto singles = SRingPartition::singletons(g);
  EXPECT_TRUE(check_sring(singles).ok);
  EXPECT_EQ(singles.rank(), 24u);
  EXPECT_TRUE(check_sring(SRingPartition(g, coarse_classes(g))).ok);
}

TEST(IsSring, IdentityMustBeAClass) {
  const auto g = build_paper_group(3);
  // {e, a} together with everything else split off as singletons
  const auto& p = *g.family_generators();
  std::vector<ElementSet> cls{{g.identity(), p.a}};
  for (auto x : g.all())
    if (x != g.identity() && x != p.a) cls.push_back({x});
  const auto r = check_sring(SRingPartition(g, cls));
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.violation.find("axiom (1)"), std::string::npos);
}

TEST(IsSring, InverseClosureAndProductConstancy) {
  const auto g = cyclic_group(7);
  // the inverse of {g, g^3} is {g^4, g^6}, not a class
  std::vector<ElementSet> bad_inverse{{Element{0}}, {Element{1}, Element{3}}, {Element{2}, Element{4}},
                                      {Element{5}, Element{6}}};
  auto r = check_sring(SRingPartition(g, bad_inverse));
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.violation.find("axiom (2)"), std::string::npos);

  // {e}, {1,6}, {2,3,4,5}: inverse closed, but {1,6}^2 = 2e + {2} + {5} is not constant on {2,3,4,5}
  std::vector<ElementSet> bad_product{{Element{0}}, {Element{1}, Element{6}},
                                      {Element{2}, Element{3}, Element{4}, Element{5}}};
  r = check_sring(SRingPartition(g, bad_product));
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.violation.find("axiom (3)"), std::string::npos);

  // orbits of inversion: a genuine S-ring
  std::vector<ElementSet> good{{Element{0}}, {Element{1}, Element{6}}, {Element{2}, Element{5}},
                               {Element{3}, Element{4}}};
  EXPECT_TRUE(check_sring(SRingPartition(g, good)).ok);
}

TEST(Partition, RejectsOverlapAndGaps) {
  const auto g = cyclic_group(4);
  EXPECT_THROW(SRingPartition(g, std::vector<ElementSet>{{Element{0}, Element{1}}, {Element{1}, Element{2}, Element{3}}}),
               InvalidParameter);
  EXPECT_THROW(SRingPartition(g, std::vector<ElementSet>{{Element{0}}, {Element{1}}}), InvalidParameter);
}

TEST(WlClosure, OddKGivesFullGroupRing) {
  for (int k : {3, 5}) {
    const auto g = build_paper_group(k);
    const auto c = wl_closure(g, {connection_set(g, k)});
    EXPECT_EQ(c.rank(), g.order()) << "k=" << k;
    EXPECT_EQ(c, SRingPartition::singletons(g));
  }
}

TEST(WlClosure, EvenKFourIsWreathPartition) {
  const int k = 4;
  const auto g = build_paper_group(k);
  const auto& p = *g.family_generators();
  const auto sub = family_subgroups(g, k);
  const auto c = wl_closure(g, {connection_set(g, k)});
  EXPECT_EQ(c.rank(), 20u);
  EXPECT_TRUE(check_sring(c).ok);

  std::vector<ElementSet> want;
  for (auto x : sub.U.elements()) want.push_back({x});
  for (Element t : {p.a, p.c, p.d, g.mul(g.mul(p.c, p.d), p.a)}) want.push_back(right_mul(g, sub.L.elements(), t));
  EXPECT_EQ(c, SRingPartition(g, want));
}

TEST(WlClosure, RankForKSix) {
  const auto g = build_paper_group(6);
  EXPECT_EQ(wl_closure(g, {connection_set(g, 6)}).rank(), 28u);
}

TEST(WlClosure, NoMarkedSetsGivesRankTwo) {
  for (const auto& g : {cyclic_group(7), cyclic_group(12), dihedral_group(5), build_paper_group(3)}) {
    const auto c = wl_closure(g, std::span<const ElementSet>{});
    EXPECT_EQ(c.rank(), 2u);
    EXPECT_EQ(c, SRingPartition(g, coarse_classes(g)));
  }
}

TEST(WlClosure, InvarianceProperties) {
  std::mt19937 rng(2024);
  const std::vector<Group> groups{cyclic_group(12), dihedral_group(6), build_paper_group(3),
                                  direct_product(cyclic_group(2), dihedral_group(4)), cyclic_group(16)};
  for (const auto& g : groups) {
    std::uniform_int_distribution<std::uint32_t> pick(1, static_cast<std::uint32_t>(g.order() - 1));
    for (int t = 0; t < 6; ++t) {
      ElementSet m1, m2;
      for (int i = 0; i < 3; ++i) m1.push_back(Element{pick(rng)});
      m2.push_back(Element{pick(rng)});
      m1 = normalized(m1);
      const auto c1 = wl_closure(g, {m1});
      ASSERT_TRUE(check_sring(c1).ok) << check_sring(c1).violation;
      EXPECT_TRUE(c1.is_union_of_classes(m1));

      // monotone in the marked sets
      const auto c12 = wl_closure(g, {m1, m2});
      EXPECT_TRUE(check_sring(c12).ok);
      EXPECT_TRUE(c12.refines(c1));

      // idempotent
      const auto again = wl_closure(g, std::span<const ElementSet>(c1.classes()));
      EXPECT_EQ(again, c1);
    }
  }
}

TEST(Radical, Basics) {
  const int k = 4;
  const auto g = build_paper_group(k);
  const auto& p = *g.family_generators();
  const auto sub = family_subgroups(g, k);
  const auto lc = right_mul(g, sub.L.elements(), p.c);
  EXPECT_TRUE(sub.L.is_subgroup_of(radical(g, lc)));
  EXPECT_EQ(radical(g, {g.identity()}).order(), 1u);
  EXPECT_EQ(radical(g, g.all()).order(), g.order());
}

TEST(SectionSring, WreathSectionsForEvenK) {
  for (int k : {4, 6}) {
    const auto g = build_paper_group(k);
    const auto sub = family_subgroups(g, k);
    const auto c = wl_closure(g, {connection_set(g, k)});
    const auto ul = make_section(g, sub.U, sub.L);
    const auto su = section_sring(c, ul);
    EXPECT_EQ(su.rank(), 4u) << "k=" << k;
    EXPECT_EQ(su, SRingPartition::singletons(*ul.quotient));
    const auto gl = make_section(g, whole_group(g), sub.L);
    EXPECT_EQ(section_sring(c, gl).rank(), 8u) << "k=" << k;
    EXPECT_TRUE(check_sring(section_sring(c, gl)).ok);
  }
}

TEST(SectionSring, TrivialSectionOfGroupRing) {
  const auto g = build_paper_group(3);
  const auto s = make_section(g, whole_group(g), trivial_subgroup(g));
  EXPECT_EQ(section_sring(SRingPartition::singletons(g), s).rank(), g.order());
}

TEST(SectionSring, RequiresASubgroups) {
  const auto g = build_paper_group(4);
  const auto& p = *g.family_generators();
  const auto coarse = SRingPartition(g, coarse_classes(g));
  const auto a = subgroup_generated(g, {p.a});
  EXPECT_THROW(section_sring(coarse, make_section(g, whole_group(g), a)), StructuralError);
}

TEST(DetectWreath, EvenKDecomposition) {
  for (int k : {4, 6}) {
    const auto g = build_paper_group(k);
    const auto c = wl_closure(g, {connection_set(g, k)});
    const auto decs = detect_wreath(c);
    bool found = false;
    for (const auto& d : decs) {
      EXPECT_TRUE(d.rank_identity_holds());
      if (d.section.lower.order() == static_cast<std::size_t>(k) &&
          d.section.upper.order() == static_cast<std::size_t>(4 * k)) {
        found = true;
        EXPECT_EQ(d.rank_quotient, 8u);
        EXPECT_EQ(d.rank_section, 4u);
        EXPECT_EQ(d.rank_u, static_cast<std::size_t>(4 * k));
        EXPECT_EQ(d.rank_total, static_cast<std::size_t>(4 * k + 4));
      }
    }
    EXPECT_TRUE(found) << "k=" << k;
  }
}

TEST(DetectWreath, NoneForGroupRingOrRankTwo) {
  const auto g = build_paper_group(3);
  EXPECT_TRUE(detect_wreath(SRingPartition::singletons(g)).empty());
  for (const auto& h : {cyclic_group(7), cyclic_group(12), dihedral_group(4), build_paper_group(3)})
    EXPECT_TRUE(detect_wreath(SRingPartition(h, coarse_classes(h))).empty()) << h.order();
}

TEST(ClosureTrace, OddK) {
  const auto tr = closure_trace(build_paper_group(3), 3);
  EXPECT_TRUE(tr.all_hold());
  EXPECT_TRUE(tr.all_singletons);
  EXPECT_EQ(tr.rank, 24u);
}

TEST(ClosureTrace, EvenKSteps) {
  for (int k : {4, 8}) {
    const auto tr = closure_trace(build_paper_group(k), k);
    for (const auto& a : tr.assertions) EXPECT_TRUE(a.holds) << "k=" << k << " " << a.name << ": " << a.observed;
    ASSERT_NE(tr.find("{da} is a basic set"), nullptr);
    ASSERT_NE(tr.find("Lc is a basic set"), nullptr);
    EXPECT_FALSE(tr.all_singletons);
    EXPECT_EQ(tr.rank, static_cast<std::size_t>(4 * k + 4));
  }
}
