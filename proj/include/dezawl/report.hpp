#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dezawl/graph.hpp"
#include "dezawl/group.hpp"
#include "dezawl/group_ring.hpp"
#include "dezawl/spectrum.hpp"
#include "dezawl/sring.hpp"
#include "dezawl/wl.hpp"

namespace dezawl {

inline constexpr int kReportSchemaVersion = 1;

/// 8k for odd k, 4k + 4 for even k.
inline std::size_t expected_wl_rank(int k) {
  return static_cast<std::size_t>(k % 2 ? 8 * k : 4 * k + 4);
}

struct ClaimResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct WreathSummary {
  std::size_t order_u = 0, order_l = 0;
  std::size_t rank_u = 0, rank_quotient = 0, rank_section = 0, rank_total = 0;
  bool rank_identity = false;
};

struct GridComparison {
  std::optional<DezaParameters> grid_deza;
  bool same_parameters = false;
  std::size_t grid_wl_rank = 0;
  bool wl1_distinguishes = true;
};

struct VerifyOptions {
  /// Remove the first edge of Γ_k before the graph checks (negative control).
  bool drop_edge = false;
  bool timings = false;
};

/// Everything `verify` establishes for one k.
struct VerificationReport {
  int k = 0;
  std::size_t group_order = 0;
  std::size_t connection_set_size = 0;
  bool connection_set_symmetric = false;
  bool identity_free = false;
  SquareIdentityCheck square;
  DezaVerdict deza;
  std::size_t wl_rank_graph = 0;
  std::size_t wl_rank_sring = 0;
  std::size_t expected_rank = 0;
  bool closure_is_sring = false;
  bool coherence_verified = false;
  std::optional<WreathSummary> wreath;
  ClosureTrace trace;
  DDGVerdict ddg;
  SpectrumVerdict spectrum;
  std::size_t degree_sum = 0;
  GridComparison grid;
  std::vector<ClaimResult> claims;
  std::map<std::string, double> timings_ms;
  bool record_timings = false;

  bool pass() const {
    return std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.pass; });
  }
  const ClaimResult* first_failure() const {
    for (const auto& c : claims)
      if (!c.pass) return &c;
    return nullptr;
  }
};

namespace detail {

class PhaseTimer {
 public:
  explicit PhaseTimer(std::map<std::string, double>& sink) : sink_(sink) {}
  template <class F>
  auto run(const std::string& phase, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto result = f();
    sink_[phase] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return result;
  }

 private:
  std::map<std::string, double>& sink_;
};

inline std::string deza_tuple(const DezaParameters& p) {
  std::ostringstream os;
  os << "(" << p.n << ", " << p.k << ", " << p.beta << ", " << p.alpha << ")";
  return os.str();
}

inline std::string opt_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

inline std::string ddg_tuple(const DDGParameters& p) {
  std::ostringstream os;
  os << "(" << p.n << ", " << p.k << ", " << opt_str(p.alpha) << ", " << opt_str(p.beta) << ", " << p.m << ", " << p.l
     << ")";
  return os.str();
}

inline std::string spectrum_string(const SpectrumVerdict& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) os << (i ? " " : "") << s.pairs[i].eigenvalue << ":" << s.pairs[i].multiplicity;
  if (s.residual) os << (s.pairs.empty() ? "" : " ") << "residual:" << s.residual;
  return os.str();
}

}  // namespace detail

inline VerificationReport build_report(int k, const VerifyOptions& opt = {}) {
  VerificationReport r;
  r.k = k;
  r.record_timings = opt.timings;
  detail::PhaseTimer timer(r.timings_ms);
  auto gp = std::make_shared<const Group>(build_paper_group(k));
  const Group& g = *gp;
  const std::size_t n = g.order();
  r.group_order = n;
  r.expected_rank = expected_wl_rank(k);

  const ElementSet s = connection_set(g, k);
  r.connection_set_size = s.size();
  r.connection_set_symmetric = inverse_set(g, s) == s;
  r.identity_free = !contains(s, g.identity());
  r.claims.push_back({"connection_set",
                      r.connection_set_size == static_cast<std::size_t>(2 * (k + 1)) && r.connection_set_symmetric &&
                          r.identity_free,
                      "|S| = " + std::to_string(r.connection_set_size)});

  r.square = timer.run("square", [&] { return verify_eq3(g, k); });
  r.claims.push_back({"square_identity", r.square.holds,
                      r.square.holds ? "S^2 matches the closed form"
                                  : "differs at " + g.name(*r.square.first_difference) + ": " +
                                        std::to_string(r.square.lhs_coefficient) + " vs " +
                                        std::to_string(r.square.rhs_coefficient)});

  Graph gamma = gamma_graph(g, k);
  if (opt.drop_edge) {
    const auto e = gamma.edges().front();
    gamma.remove_edge(e.first, e.second);
  }
  r.degree_sum = 2 * gamma.edge_count();

  r.deza = timer.run("deza", [&] { return deza_parameters(gamma); });
  {
    DezaParameters want;
    want.n = n;
    want.k = static_cast<std::size_t>(2 * (k + 1));
    want.beta = static_cast<std::size_t>(2 * (k - 1));
    want.alpha = 2;
    bool ok = r.deza.is_deza();
    std::string note = r.deza.reason;
    if (ok) {
      const auto& p = *r.deza.params;
      ok = p.n == want.n && p.k == want.k && p.beta == want.beta && p.alpha == want.alpha && p.strictly;
      note = detail::deza_tuple(p) + (p.strictly ? ", strictly Deza" : ", not strictly Deza");
    }
    r.claims.push_back({"strictly_deza", ok, note});
  }

  const auto closure = timer.run("closure", [&] { return wl_closure(gp, std::span<const ElementSet>(&s, 1)); });
  r.wl_rank_sring = closure.rank();
  r.closure_is_sring = check_sring(closure).ok;
  const auto cc = timer.run("wl2", [&] { return wl2(gamma); });
  r.wl_rank_graph = cc.rank;
  r.coherence_verified = verify_coherence(cc.coloring).ok;
  r.claims.push_back({"wl_rank",
                      r.wl_rank_graph == r.expected_rank && r.wl_rank_sring == r.expected_rank && r.coherence_verified,
                      "2-WL " + std::to_string(r.wl_rank_graph) + ", closure " + std::to_string(r.wl_rank_sring) +
                          ", expected " + std::to_string(r.expected_rank)});

  {
    bool ok = r.closure_is_sring;
    std::string note;
    if (k % 2) {
      ok = ok && closure.rank() == n;
      note = closure.rank() == n ? "closure is the full group ring" : "closure is not the full group ring";
    } else {
      const auto decs = timer.run("wreath", [&] { return detect_wreath(closure); });
      for (const auto& d : decs) {
        if (d.section.lower.order() == static_cast<std::size_t>(k) &&
            d.section.upper.order() == static_cast<std::size_t>(4 * k)) {
          r.wreath = WreathSummary{d.section.upper.order(), d.section.lower.order(), d.rank_u, d.rank_quotient,
                                   d.rank_section,          d.rank_total,          d.rank_identity_holds()};
          break;
        }
      }
      ok = ok && r.wreath && r.wreath->rank_quotient == 8 && r.wreath->rank_section == 4 && r.wreath->rank_identity;
      note = r.wreath ? "wreath product over U/L with |U| = " + std::to_string(r.wreath->order_u) +
                              ", |L| = " + std::to_string(r.wreath->order_l)
                        : "no wreath decomposition with |L| = k, |U| = 4k";
    }
    r.claims.push_back({"closure_structure", ok, note});
  }

  r.trace = timer.run("trace", [&] { return closure_trace(g, k); });
  {
    std::string note = "all steps hold";
    for (const auto& a : r.trace.assertions)
      if (!a.holds) {
        note = "failed: " + a.name;
        break;
      }
    r.claims.push_back({"closure_trace", r.trace.all_hold(), note});
  }

  r.ddg = timer.run("ddg", [&] { return ddg_check(gamma, canonical_ddg_partition(g, k)); });
  {
    bool ok = r.ddg.is_ddg();
    std::string note = r.ddg.reason;
    if (ok) {
      const auto& p = *r.ddg.params;
      ok = p.n == n && p.k == static_cast<std::size_t>(2 * (k + 1)) && p.alpha == static_cast<std::size_t>(2 * (k - 1)) &&
           p.beta == std::size_t{2} && p.m == 4 && p.l == static_cast<std::size_t>(2 * k);
      note = detail::ddg_tuple(p);
    }
    r.claims.push_back({"divisible_design", ok, note});
  }

  r.spectrum = timer.run("spectrum", [&] { return integral_spectrum(gamma); });
  r.claims.push_back({"integral_spectrum",
                      r.spectrum.integral() && r.spectrum.eigenvalue_set() == expected_paper_spectrum(k) &&
                          r.spectrum.first_moment() == 0 &&
                          r.spectrum.second_moment() == static_cast<long long>(r.degree_sum),
                      detail::spectrum_string(r.spectrum)});

  timer.run("grid", [&] {
    const Graph grid = grid_graph(4, static_cast<std::size_t>(2 * k));
    const auto gd = deza_parameters(grid);
    r.grid.grid_deza = gd.params;
    r.grid.same_parameters = gd.is_deza() && r.deza.is_deza() && gd.params->n == r.deza.params->n &&
                             gd.params->k == r.deza.params->k && gd.params->beta == r.deza.params->beta &&
                             gd.params->alpha == r.deza.params->alpha;
    r.grid.grid_wl_rank = wl_rank(grid);
    r.grid.wl1_distinguishes = wl1_distinguishes(gamma, grid);
    return 0;
  });
  r.claims.push_back({"grid_comparison",
                      r.grid.same_parameters && r.grid.grid_wl_rank == 4 && r.grid.grid_wl_rank != r.wl_rank_graph &&
                          !r.grid.wl1_distinguishes,
                      "grid WL-rank " + std::to_string(r.grid.grid_wl_rank) +
                          (r.grid.wl1_distinguishes ? ", 1-WL distinguishes" : ", 1-WL does not distinguish")});
  return r;
}

namespace detail {

inline nlohmann::json deza_json(const std::optional<DezaParameters>& p) {
  if (!p) return nullptr;
  nlohmann::json j = {{"n", p->n},
                      {"k", p->k},
                      {"beta", p->beta},
                      {"alpha", p->alpha},
                      {"degenerate", p->degenerate},
                      {"strongly_regular", p->strongly_regular},
                      {"strictly", p->strictly}};
  j["diameter"] = p->diameter ? nlohmann::json(*p->diameter) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json opt_json(const std::optional<std::size_t>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace detail

inline nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["k"] = r.k;
  j["group_order"] = r.group_order;
  j["connection_set"] = {{"size", r.connection_set_size},
                         {"symmetric", r.connection_set_symmetric},
                         {"identity_free", r.identity_free}};
  j["square_identity_holds"] = r.square.holds;
  j["deza"] = detail::deza_json(r.deza.params);
  if (!r.deza.is_deza()) j["deza_failure"] = r.deza.reason;
  j["wl_rank_graph"] = r.wl_rank_graph;
  j["wl_rank_sring"] = r.wl_rank_sring;
  j["expected_wl_rank"] = r.expected_rank;
  j["closure_is_sring"] = r.closure_is_sring;
  j["coherence_verified"] = r.coherence_verified;
  if (r.wreath) {
    j["wreath"] = {{"order_u", r.wreath->order_u},         {"order_l", r.wreath->order_l},
                   {"rank_u", r.wreath->rank_u},           {"rank_quotient", r.wreath->rank_quotient},
                   {"rank_section", r.wreath->rank_section}, {"rank_total", r.wreath->rank_total},
                   {"rank_identity", r.wreath->rank_identity}};
  } else {
    j["wreath"] = nullptr;
  }
  auto trace = nlohmann::json::array();
  for (const auto& a : r.trace.assertions)
    trace.push_back({{"name", a.name}, {"expected", a.expected}, {"observed", a.observed}, {"holds", a.holds}});
  j["closure_trace"] = std::move(trace);
  if (r.ddg.params) {
    const auto& p = *r.ddg.params;
    j["ddg"] = {{"n", p.n},
                {"k", p.k},
                {"alpha", detail::opt_json(p.alpha)},
                {"beta", detail::opt_json(p.beta)},
                {"m", p.m},
                {"l", p.l},
                {"partition", p.partition}};
  } else {
    j["ddg"] = nullptr;
  }
  j["spectrum"] = to_json(r.spectrum, r.degree_sum);
  j["grid_comparison"] = {{"grid_deza", detail::deza_json(r.grid.grid_deza)},
                          {"same_parameters", r.grid.same_parameters},
                          {"grid_wl_rank", r.grid.grid_wl_rank},
                          {"wl1_distinguishes", r.grid.wl1_distinguishes}};
  auto claims = nlohmann::json::array();
  for (const auto& c : r.claims) claims.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["claims"] = std::move(claims);
  j["verdict"] = r.pass() ? "pass" : "fail";
  if (r.record_timings) j["timings_ms"] = r.timings_ms;
  return j;
}

inline std::string summary(const VerificationReport& r) {
  std::ostringstream os;
  os << "k = " << r.k << ", |G| = " << r.group_order << ", |S| = " << r.connection_set_size << "\n";
  for (const auto& c : r.claims) os << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  if (r.record_timings)
    for (const auto& [phase, ms] : r.timings_ms) os << "  time " << phase << ": " << ms << " ms\n";
  os << "verdict: " << (r.pass() ? "pass" : "fail") << "\n";
  return os.str();
}

inline std::string csv_header(bool timings) {
  std::string h = "k,n,S,deza_n,deza_k,deza_beta,deza_alpha,strictly,wl_rank_2wl,wl_rank_closure,spectrum,ddg,pass";
  if (timings) h += ",closure_ms,wl2_ms,spectrum_ms";
  return h;
}

inline std::string csv_row(const VerificationReport& r) {
  std::ostringstream os;
  os << r.k << ',' << r.group_order << ',' << r.connection_set_size << ',';
  if (r.deza.params) {
    const auto& p = *r.deza.params;
    os << p.n << ',' << p.k << ',' << p.beta << ',' << p.alpha << ',' << (p.strictly ? "yes" : "no") << ',';
  } else {
    os << ",,,,no,";
  }
  os << r.wl_rank_graph << ',' << r.wl_rank_sring << ',' << detail::spectrum_string(r.spectrum) << ',';
  std::string ddg = r.ddg.params ? detail::ddg_tuple(*r.ddg.params) : "-";
  std::replace(ddg.begin(), ddg.end(), ',', ';');
  os << ddg << ',' << (r.pass() ? "pass" : "fail");
  if (r.record_timings) {
    auto t = [&](const char* p) { return r.timings_ms.count(p) ? r.timings_ms.at(p) : 0.0; };
    os << ',' << t("closure") << ',' << t("wl2") << ',' << t("spectrum");
  }
  return os.str();
}

}  // namespace dezawl
