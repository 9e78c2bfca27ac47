#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>
#include <json.hpp>

#include "dezawl/graph.hpp"

namespace dezawl {

struct EigenPair {
  long long eigenvalue = 0;
  std::size_t multiplicity = 0;

  friend bool operator==(const EigenPair&, const EigenPair&) = default;
};

/// Certified part of an adjacency spectrum. For an integral graph the pairs
/// cover all n dimensions and `residual` is 0.
struct SpectrumVerdict {
  std::size_t n = 0;
  /// Decreasing eigenvalue order.
  std::vector<EigenPair> pairs;
  /// Dimension not accounted for by certified integer eigenvalues.
  std::size_t residual = 0;

  bool integral() const { return residual == 0; }

  std::set<long long> eigenvalue_set() const {
    std::set<long long> s;
    for (const auto& p : pairs) s.insert(p.eigenvalue);
    return s;
  }

  /// sum of lambda * multiplicity; the trace of A.
  long long first_moment() const {
    long long s = 0;
    for (const auto& p : pairs) s += p.eigenvalue * static_cast<long long>(p.multiplicity);
    return s;
  }

  /// sum of lambda^2 * multiplicity; the trace of A^2.
  long long second_moment() const {
    long long s = 0;
    for (const auto& p : pairs) s += p.eigenvalue * p.eigenvalue * static_cast<long long>(p.multiplicity);
    return s;
  }
};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination over
/// arbitrary-precision integers. Exact; the matrix is taken by value.
inline std::size_t exact_rank(std::vector<std::vector<mpz_class>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  std::size_t rank = 0;
  mpz_class prev = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        m[r][c] = m[rank][col] * m[r][c] - m[r][col] * m[rank][c];
        mpz_divexact(m[r][c].get_mpz_t(), m[r][c].get_mpz_t(), prev.get_mpz_t());
      }
      m[r][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank;
}

/// dim ker(A - lambda I), computed exactly.
inline std::size_t exact_nullity(const Graph& g, long long lambda) {
  const std::size_t n = g.n();
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) m[u][v] = static_cast<long>((g.has_edge(u, v) ? 1 : 0) - (u == v ? lambda : 0));
  return n - exact_rank(std::move(m));
}

inline constexpr double kIntegralityTolerance = 1e-6;

/// Two stages: a symmetric floating-point eigensolver proposes integer
/// candidates (eigenvalues within kIntegralityTolerance of an integer), and
/// each candidate's multiplicity is then certified as an exact nullity.
/// The graph is integral iff the certified multiplicities sum to n.
inline SpectrumVerdict integral_spectrum(const Graph& g) {
  if (g.directed() || !g.is_symmetric()) throw InvalidParameter("spectrum needs an undirected graph");
  const std::size_t n = g.n();
  SpectrumVerdict out;
  out.n = n;
  if (n == 0) return out;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (auto [u, v] : g.edges()) {
    a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = 1.0;
    a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = 1.0;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  std::set<long long, std::greater<>> candidates;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double ev = solver.eigenvalues()(i);
    const double rounded = std::round(ev);
    if (std::abs(ev - rounded) <= kIntegralityTolerance) candidates.insert(static_cast<long long>(rounded));
  }

  std::size_t certified = 0;
  for (auto lambda : candidates) {
    const auto mult = exact_nullity(g, lambda);
    if (mult == 0) continue;
    out.pairs.push_back({lambda, mult});
    certified += mult;
  }
  out.residual = n - certified;
  return out;
}

/// {2(k+1), 2(k-1), -2(k-1), 2, -2}.
inline std::set<long long> expected_paper_spectrum(int k) {
  if (k < 3) throw InvalidParameter("k must be at least 3, got " + std::to_string(k));
  const long long kk = k;
  return {2 * (kk + 1), 2 * (kk - 1), -2 * (kk - 1), 2, -2};
}

inline nlohmann::json to_json(const SpectrumVerdict& s, std::size_t degree_sum) {
  nlohmann::json j;
  auto pairs = nlohmann::json::array();
  for (const auto& p : s.pairs) pairs.push_back({{"eigenvalue", p.eigenvalue}, {"multiplicity", p.multiplicity}});
  j["pairs"] = std::move(pairs);
  j["integral"] = s.integral();
  j["residual_dimension"] = s.residual;
  j["trace"] = s.first_moment();
  j["trace_square"] = s.second_moment();
  j["trace_identity"] = s.integral() && s.first_moment() == 0;
  j["trace_square_identity"] = s.integral() && s.second_moment() == static_cast<long long>(degree_sum);
  return j;
}

}  // namespace dezawl
