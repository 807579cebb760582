#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "gdpp/rng.hpp"
#include "gdpp/sampling_set.hpp"
#include "gdpp/types.hpp"

namespace gdpp {

/// Sampling-set objectives on the singular values sigma of M U_k:
/// WCE maximises min sigma^2, MSE minimises sum 1 / sigma^2, MV maximises
/// prod sigma^2.
enum class Objective { WCE, MSE, MV };

std::string_view objective_name(Objective objective) noexcept;

/// Singular values of the |rows| x k restriction, ascending,
/// min(|rows|, k) of them.
Vector singular_values_restriction(const Matrix& Uk, std::span<const Index> rows);

/// Value to maximise given the ascending eigenvalues of the k x k Gram
/// matrix of `rank` selected rows. Only the top min(rank, k) eigenvalues
/// count, which keeps all three objectives defined before |Y| reaches k.
double objective_value(Objective objective, const Vector& gram_eigenvalues, Index rank);

struct GreedyTrace {
  std::vector<double> objective;  // objective after each step
};

/// Adds, k times, the unselected row with the largest objective (lowest
/// index on ties). Throws DegenerateBasis if the final sigma_min vanishes.
SamplingSet greedy_select(const Matrix& Uk, Objective objective, GreedyTrace* trace = nullptr);

struct MaxvolOptions {
  double delta = 1e-2;
  int max_swaps = 1000;
};

/// Row-swap maxvol seeded by greedy MV: stops once no single swap grows
/// |det| by more than 1 + delta. NoConvergence past max_swaps.
SamplingSet maxvol_select(const Matrix& Uk, const MaxvolOptions& opts = {});

/// p*_i = ||U_k^T delta_i||^2 / k.
Vector leverage_distribution(const Matrix& Uk);

/// m draws with replacement from p*, weights m p*_{omega_i}.
SamplingSet iid_leverage_sample(const Vector& p_star, Index m, Rng& rng);

}  // namespace gdpp
