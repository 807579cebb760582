#include "gdpp/wilson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gdpp/error.hpp"

namespace gdpp {

namespace {
constexpr Index kAbsorbed = -1;
}

WilsonSampler::WilsonSampler(const Graph& g) : g_(&g) {
  const Index n = g.node_count();
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Index i = 0; i < n; ++i)
    offsets_[static_cast<std::size_t>(i) + 1] = offsets_[static_cast<std::size_t>(i)] + g.neighbors(i).size();
  cumulative_.resize(offsets_.back());
  for (Index i = 0; i < n; ++i) {
    auto w = g.neighbor_weights(i);
    std::partial_sum(w.begin(), w.end(), cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[static_cast<std::size_t>(i)]));
  }
}

SamplingSet WilsonSampler::sample(double q, Rng& rng) const {
  std::vector<Index> order(static_cast<std::size_t>(g_->node_count()));
  std::iota(order.begin(), order.end(), Index{0});
  return sample(q, rng, order);
}

SamplingSet WilsonSampler::sample(double q, Rng& rng, std::span<const Index> start_order) const {
  if (!(q > 0.0) || !std::isfinite(q)) throw Error(ErrorCode::InvalidParams, "q must be finite and > 0");
  const Index n = g_->node_count();
  if (static_cast<Index>(start_order.size()) != n)
    throw Error(ErrorCode::ShapeMismatch, "start order must list every node");

  std::vector<char> in_forest(static_cast<std::size_t>(n), 0);
  std::vector<Index> next(static_cast<std::size_t>(n), kAbsorbed);
  SamplingSet out;
  out.method = "wilson";
  std::uint64_t steps = 0;

  auto step = [&](Index i) -> Index {
    const auto a = offsets_[static_cast<std::size_t>(i)];
    const auto b = offsets_[static_cast<std::size_t>(i) + 1];
    const double degree = a == b ? 0.0 : cumulative_[b - 1];
    const double u = uniform01(rng) * (degree + q);
    if (u >= degree) return kAbsorbed;
    auto first = cumulative_.begin() + static_cast<std::ptrdiff_t>(a);
    auto last = cumulative_.begin() + static_cast<std::ptrdiff_t>(b);
    auto it = std::upper_bound(first, last, u);
    if (it == last) --it;
    return g_->neighbors(i)[static_cast<std::size_t>(it - first)];
  };

  for (Index start : start_order) {
    if (start < 0 || start >= n) throw Error(ErrorCode::OutOfRange, "start node out of range");
    if (in_forest[static_cast<std::size_t>(start)]) continue;
    // Walk, recording the last exit from every node: following `next` from
    // `start` afterwards traces the loop-erased path.
    Index u = start;
    while (!in_forest[static_cast<std::size_t>(u)]) {
      if (++steps > max_steps)
        throw Error(ErrorCode::ConvergenceFailure,
                    "Wilson watchdog: more than " + std::to_string(max_steps) + " steps");
      const Index v = step(u);
      next[static_cast<std::size_t>(u)] = v;
      if (v == kAbsorbed) break;
      u = v;
    }
    u = start;
    while (!in_forest[static_cast<std::size_t>(u)]) {
      in_forest[static_cast<std::size_t>(u)] = 1;
      const Index v = next[static_cast<std::size_t>(u)];
      if (v == kAbsorbed) {
        out.nodes.push_back(u);
        break;
      }
      u = v;
    }
  }
  return out;
}

SamplingSet wilson_sample(const Graph& g, double q, Rng& rng) {
  return WilsonSampler(g).sample(q, rng);
}

QTuning tune_q_detailed(const Graph& g, Index target_k, Rng& rng, int runs_per_probe, double tol,
                        int max_probes) {
  const Index n = g.node_count();
  if (target_k < 1 || target_k > n)
    throw Error(ErrorCode::OutOfRange, "target_k must lie in [1, N]");
  if (runs_per_probe < 1 || !(tol > 0.0))
    throw Error(ErrorCode::InvalidParams, "tuning needs runs_per_probe >= 1 and tol > 0");

  const WilsonSampler sampler(g);
  const double target = static_cast<double>(target_k);
  QTuning result;
  auto probe = [&](double q) {
    double total = 0.0;
    for (int r = 0; r < runs_per_probe; ++r) total += static_cast<double>(sampler.sample(q, rng).size());
    ++result.probes;
    result.q = q;
    result.mean_size = total / runs_per_probe;
    return result.mean_size;
  };
  auto close_enough = [&](double mean) { return std::abs(mean - target) <= tol * target; };
  auto budget_left = [&] { return result.probes < max_probes; };

  const double mean_degree = g.mean_degree();
  double q = mean_degree > 0.0 ? target * mean_degree / static_cast<double>(n) : 1.0;
  double mean = probe(q);
  if (close_enough(mean)) return result;

  // Bracket: E|Y| increases with q.
  double lo, hi;
  if (mean < target) {
    lo = q;
    while (true) {
      if (!budget_left()) break;
      q *= 2.0;
      mean = probe(q);
      if (close_enough(mean)) return result;
      if (mean > target) break;
      lo = q;
    }
    hi = q;
  } else {
    hi = q;
    while (true) {
      if (!budget_left()) break;
      q *= 0.5;
      mean = probe(q);
      if (close_enough(mean)) return result;
      if (mean < target) break;
      hi = q;
    }
    lo = q;
  }

  while (budget_left()) {
    const double mid = std::sqrt(lo * hi);
    mean = probe(mid);
    if (close_enough(mean)) return result;
    (mean < target ? lo : hi) = mid;
  }
  throw Error(ErrorCode::NoConvergence,
              "q tuning did not reach |Y| ~ " + std::to_string(target_k) + " within " +
                  std::to_string(max_probes) + " probes (last q = " + std::to_string(result.q) +
                  ", mean |Y| = " + std::to_string(result.mean_size) + ")");
}

double tune_q(const Graph& g, Index target_k, Rng& rng, int runs_per_probe, double tol) {
  return tune_q_detailed(g, target_k, rng, runs_per_probe, tol).q;
}

double expected_sample_size(const SpectralBasis& basis, double q) {
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidParams, "q must be > 0");
  double total = 0.0;
  for (Index i = 0; i < basis.size(); ++i) total += q / (q + basis.eigenvalues[i]);
  return total;
}

}  // namespace gdpp
