#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gdpp/graph.hpp"
#include "gdpp/rng.hpp"
#include "gdpp/sampling_set.hpp"
#include "gdpp/spectral.hpp"

namespace gdpp {

/// Loop-erased random walks on the graph augmented with an absorbing node
/// Delta joined to every node with weight q. The roots (last node before
/// Delta) form a DPP with kernel q (L + q I)^{-1}.
///
/// Per-node cumulative weight tables are built once; sampling is then
/// O(log deg) per step. The walker is read-only after construction, so one
/// instance can serve concurrent callers holding their own Rng.
class WilsonSampler {
 public:
  explicit WilsonSampler(const Graph& g);

  const Graph& graph() const noexcept { return *g_; }

  /// Walks start from the lowest-index node not yet in the forest.
  SamplingSet sample(double q, Rng& rng) const;
  /// Walks start in the given order (a permutation of all nodes).
  SamplingSet sample(double q, Rng& rng, std::span<const Index> start_order) const;

  /// Total-step watchdog; exceeding it throws ConvergenceFailure.
  std::uint64_t max_steps = 1'000'000'000ULL;

 private:
  const Graph* g_;
  std::vector<double> cumulative_;  // aligned with the CSR neighbor arrays
  std::vector<std::size_t> offsets_;
};

/// Throws InvalidParams if q <= 0. The weights field is left empty.
SamplingSet wilson_sample(const Graph& g, double q, Rng& rng);

struct QTuning {
  double q = 0.0;
  double mean_size = 0.0;  // empirical mean |Y| at the returned q
  int probes = 0;
};

/// Searches q so that the empirical mean of |Y| over `runs_per_probe` runs
/// is within tol * target_k of target_k: exponential bracketing from
/// q0 = target_k * mean_degree / N, then bisection on log q. At most
/// `max_probes` probes; NoConvergence otherwise.
QTuning tune_q_detailed(const Graph& g, Index target_k, Rng& rng, int runs_per_probe, double tol,
                        int max_probes = 30);
double tune_q(const Graph& g, Index target_k, Rng& rng, int runs_per_probe, double tol);

/// E|Y| = sum_i q / (q + lambda_i).
double expected_sample_size(const SpectralBasis& basis, double q);

}  // namespace gdpp
