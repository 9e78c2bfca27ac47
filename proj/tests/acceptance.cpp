// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "dezawl/dezawl.hpp"

using namespace dezawl;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void fail(const std::string& why) {
    if (pass) note << why;
    pass = false;
  }
};

// Every closure and every 2-WL output produced below is also fed through
// the independent validators; criterion 8 reports the tally.
struct PropertyTally {
  std::size_t closures = 0, closure_failures = 0;
  std::size_t configurations = 0, coherence_failures = 0;
} tally;

SRingPartition closure_checked(const std::shared_ptr<const Group>& g, const ElementSet& s) {
  auto c = wl_closure(g, std::span<const ElementSet>(&s, 1));
  ++tally.closures;
  if (!check_sring(c).ok) ++tally.closure_failures;
  return c;
}

CoherentConfiguration wl2_checked(const Graph& g) {
  auto cc = wl2(g);
  ++tally.configurations;
  if (!verify_coherence(cc.coloring).ok) ++tally.coherence_failures;
  return cc;
}

std::shared_ptr<const Group> group_ptr(int k) { return std::make_shared<const Group>(build_paper_group(k)); }

Outcome deza_criterion() {
  Outcome o;
  for (int k = 3; k <= 10; ++k) {
    const auto g = build_paper_group(k);
    const auto v = deza_parameters(gamma_graph(g, k));
    const std::size_t n = 8 * k, deg = 2 * (k + 1), beta = 2 * (k - 1), alpha = 2;
    if (!v.is_deza()) {
      o.fail("k=" + std::to_string(k) + ": " + v.reason);
      continue;
    }
    const auto& p = *v.params;
    if (p.n != n || p.k != deg || p.beta != beta || p.alpha != alpha || !p.strictly || p.strongly_regular ||
        p.diameter != std::size_t{2})
      o.fail("k=" + std::to_string(k) + ": wrong parameters");
  }
  if (o.pass) o.note << "(8k, 2(k+1), 2(k-1), 2) strictly Deza for k = 3..10";
  return o;
}

Outcome square_criterion() {
  Outcome o;
  for (int k = 3; k <= 12; ++k)
    if (!verify_eq3(build_paper_group(k), k).holds) o.fail("fails at k=" + std::to_string(k));
  if (o.pass) o.note << "S^2 identity exact for k = 3..12";
  return o;
}

Outcome odd_rank_criterion() {
  Outcome o;
  for (int k : {3, 5, 7, 9, 11}) {
    const auto g = group_ptr(k);
    const auto s = connection_set(*g, k);
    const auto rank = wl2_checked(cayley_graph(*g, s)).rank;
    const auto crank = closure_checked(g, s).rank();
    o.note << (o.note.tellp() > 0 ? ", " : "") << "k=" << k << ": " << rank << "/" << crank;
    if (rank != static_cast<std::size_t>(8 * k) || crank != rank) o.pass = false;
  }
  return o;
}

Outcome even_rank_criterion() {
  Outcome o;
  for (int k : {4, 6, 8, 10}) {
    const auto g = group_ptr(k);
    const auto s = connection_set(*g, k);
    const auto rank = wl2_checked(cayley_graph(*g, s)).rank;
    const auto closure = closure_checked(g, s);
    bool wreath = false;
    for (const auto& d : detect_wreath(closure))
      if (d.section.lower.order() == static_cast<std::size_t>(k) &&
          d.section.upper.order() == static_cast<std::size_t>(4 * k) && d.rank_quotient == 8 && d.rank_section == 4 &&
          d.rank_identity_holds())
        wreath = true;
    o.note << (o.note.tellp() > 0 ? ", " : "") << "k=" << k << ": " << rank << "/" << closure.rank()
           << (wreath ? " wreath" : " no wreath");
    if (rank != static_cast<std::size_t>(4 * k + 4) || closure.rank() != rank || !wreath) o.pass = false;
  }
  return o;
}

Outcome trace_criterion() {
  Outcome o;
  for (int k = 3; k <= 6; ++k) {
    const auto g = group_ptr(k);
    const auto& p = *g->family_generators();
    const auto closure = closure_checked(g, connection_set(*g, k));
    std::vector<ElementSet> want{{g->mul(p.c, p.b)}, {g->mul(p.c, p.a)}, {g->mul(p.d, g->inv(p.a))}, {g->pow(p.a, 2)}};
    if (k % 2 == 0) {
      want.push_back({g->mul(p.d, p.a)});
      want.push_back(right_mul(*g, family_subgroups(*g, k).L.elements(), p.c));
    }
    for (const auto& cls : want)
      if (!closure.is_class(cls)) o.fail("k=" + std::to_string(k) + ": " + format_set(*g, cls) + " is not a basic set");
    const auto tr = closure_trace(*g, k);
    if (!tr.all_hold()) o.fail("k=" + std::to_string(k) + ": trace step fails");
  }
  if (o.pass) o.note << "{cb}, {ca}, {da^-1}, {a^2} basic for k = 3..6; {da}, Lc basic for even k";
  return o;
}

Outcome ddg_spectrum_criterion() {
  Outcome o;
  for (int k = 3; k <= 10; ++k) {
    const auto g = build_paper_group(k);
    const auto gamma = gamma_graph(g, k);
    const auto d = ddg_check(gamma, canonical_ddg_partition(g, k));
    const std::size_t n = 8 * k;
    if (!d.is_ddg() || d.params->n != n || d.params->k != std::size_t(2 * (k + 1)) ||
        d.params->alpha != std::size_t(2 * (k - 1)) || d.params->beta != std::size_t{2} || d.params->m != 4 ||
        d.params->l != std::size_t(2 * k))
      o.fail("k=" + std::to_string(k) + ": divisible design parameters differ");
    const auto s = integral_spectrum(gamma);
    if (!s.integral() || s.eigenvalue_set() != expected_paper_spectrum(k) || s.first_moment() != 0 ||
        s.second_moment() != static_cast<long long>(n * 2 * (k + 1)))
      o.fail("k=" + std::to_string(k) + ": spectrum " + detail::spectrum_string(s));
  }
  if (o.pass) o.note << "(8k, 2(k+1), 2(k-1), 2, 4, 2k) and certified integral spectrum for k = 3..10";
  return o;
}

Outcome grid_criterion() {
  Outcome o;
  for (int k = 3; k <= 10; ++k) {
    const auto g = build_paper_group(k);
    const auto gamma = gamma_graph(g, k);
    const auto grid = grid_graph(4, static_cast<std::size_t>(2 * k));
    const auto a = deza_parameters(gamma), b = deza_parameters(grid);
    const bool same = a.is_deza() && b.is_deza() && a.params->n == b.params->n && a.params->k == b.params->k &&
                      a.params->beta == b.params->beta && a.params->alpha == b.params->alpha;
    const auto grid_rank = wl2_checked(grid).rank;
    const auto rank = wl2_checked(gamma).rank;
    if (!same) o.fail("k=" + std::to_string(k) + ": Deza parameters differ");
    if (grid_rank != 4 || grid_rank == rank) o.fail("k=" + std::to_string(k) + ": grid WL-rank " + std::to_string(grid_rank));
    if (k <= 5 && wl1_distinguishes(gamma, grid)) o.fail("k=" + std::to_string(k) + ": 1-WL distinguishes");
  }
  if (o.pass) o.note << "same Deza parameters, grid WL-rank 4 for k = 3..10; 1-WL blind for k = 3..5";
  return o;
}

Outcome property_criterion() {
  Outcome o;
  std::mt19937 rng(20240607);
  const std::vector<Group> groups{cyclic_group(12),
                                  cyclic_group(32),
                                  dihedral_group(8),
                                  dihedral_group(15),
                                  build_paper_group(3),
                                  build_paper_group(4),
                                  direct_product(cyclic_group(2), dihedral_group(4)),
                                  direct_product(cyclic_group(4), cyclic_group(4)),
                                  direct_product(dihedral_group(3), cyclic_group(5)),
                                  direct_product(cyclic_group(2), direct_product(cyclic_group(2), dihedral_group(4)))};
  std::size_t agree = 0, sets = 0;
  for (int t = 0; t < 20; ++t) {
    const auto g = std::make_shared<const Group>(groups[static_cast<std::size_t>(t) % groups.size()]);
    std::uniform_int_distribution<std::uint32_t> pick(1, static_cast<std::uint32_t>(g->order() - 1));
    ElementSet s;
    const int draws = 1 + t % 4;
    for (int i = 0; i < draws; ++i) {
      const Element x{pick(rng)};
      s.push_back(x);
      s.push_back(g->inv(x));
    }
    s = normalized(s);
    const auto rank = wl2_checked(cayley_graph(*g, s)).rank;
    const auto crank = closure_checked(g, s).rank();
    ++sets;
    if (rank == crank) ++agree;
    if (rank > g->order()) o.fail("WL-rank exceeds n on a Cayley graph");
  }
  for (std::size_t n : {1u, 2u, 5u, 17u, 40u}) {
    if (n >= 2 && wl2_checked(complete_graph(n)).rank != 2) o.fail("complete graph rank");
    if (n >= 2 && wl2_checked(Graph(n)).rank != 2) o.fail("empty graph rank");
  }
  if (agree != sets) o.fail("closure/2-WL ranks disagree on " + std::to_string(sets - agree) + " sets");
  if (tally.closure_failures) o.fail(std::to_string(tally.closure_failures) + " closures violate the S-ring axioms");
  if (tally.coherence_failures) o.fail(std::to_string(tally.coherence_failures) + " 2-WL outputs not coherent");
  if (o.pass)
    o.note << agree << "/" << sets << " random sets agree; " << tally.closures << " closures valid S-rings; "
           << tally.configurations << " 2-WL outputs coherent";
  return o;
}

}  // namespace

int main() {
  using Criterion = Outcome (*)();
  const std::vector<std::pair<const char*, Criterion>> criteria{
      {"strictly Deza parameters", deza_criterion},
      {"S^2 closed form", square_criterion},
      {"WL-rank, odd k", odd_rank_criterion},
      {"WL-rank, even k", even_rank_criterion},
      {"closure basic sets", trace_criterion},
      {"divisible design and spectrum", ddg_spectrum_criterion},
      {"grid comparison", grid_criterion},
      {"property suites", property_criterion},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("criterion %zu %s: %s - %s (%.2f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.note.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
