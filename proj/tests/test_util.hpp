#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/LU>

#include "gdpp/graph.hpp"
#include "gdpp/sampling_set.hpp"
#include "gdpp/rng.hpp"

namespace gdpp::test {

inline Graph path_graph(Index n, double w = 1.0) {
  std::vector<Edge> e;
  for (Index i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, w});
  return Graph(n, e);
}

inline Graph complete_graph(Index n) {
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) e.push_back({i, j, 1.0});
  return Graph(n, e);
}

// Erdos-Renyi with random positive weights; may be disconnected.
inline Graph random_weighted_graph(Index n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> w(0.2, 3.0);
  std::vector<Edge> e;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (uniform01(rng) < p) e.push_back({i, j, w(rng)});
  return Graph(n, e);
}

inline Graph sbm(Index n, double eps_fraction, std::uint64_t seed, double c = 16.0, Index k = 2) {
  SbmParams p;
  p.n = n;
  p.communities = k;
  p.c = c;
  p.eps = eps_fraction * critical_epsilon(c, k);
  return sbm_generate(p, seed);
}

struct Moments {
  double mean = 0.0;
  double var = 0.0;  // unbiased
  double se() const { return std::sqrt(var / static_cast<double>(count)); }
  std::size_t count = 0;
};

inline Moments moments(const std::vector<double>& v) {
  Moments m;
  m.count = v.size();
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x : v) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(v.size() > 1 ? v.size() - 1 : 1);
  return m;
}

// Exact DPP law: P(A = S) = |det(K - I_{S^c})|, indexed by bitmask of S.
inline std::vector<double> dpp_law_bruteforce(const Matrix& K) {
  const Index n = K.rows();
  std::vector<double> law(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < law.size(); ++mask) {
    Matrix M = K;
    for (Index i = 0; i < n; ++i)
      if (!(mask >> i & 1)) M(i, i) -= 1.0;
    law[mask] = std::abs(M.partialPivLu().determinant());
  }
  return law;
}

inline std::size_t mask_of(const SamplingSet& s) {
  std::size_t m = 0;
  for (Index v : s.nodes) m |= std::size_t{1} << v;
  return m;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& counts, double draws) {
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - counts[i] / draws);
  return tv / 2.0;
}

}  // namespace gdpp::test
