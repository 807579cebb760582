#pragma once

#include "gdpp/graph.hpp"
#include "gdpp/rng.hpp"
#include "gdpp/sampling_set.hpp"
#include "gdpp/types.hpp"

namespace gdpp {

/// y = M x + n for the sampled nodes (duplicates stay separate rows).
struct Measurement {
  Vector y;
  SamplingSet sampling;
  double noise_sigma = 0.0;
};

struct RecoveryParams {
  double gamma = 1e-5;
  int r = 4;
  double tolerance = 1e-8;    // relative residual
  Index max_iterations = 0;   // 0 selects 10 N
};

struct Recovery {
  Vector x;
  /// Known-basis paths: sigma_min(M U_k) (after reweighting when weighted)
  /// and whether it fell below 1e-12 or m < k.
  double sigma_min = 0.0;
  bool ill_conditioned = false;
  /// Regularised path: CG iterations and final relative residual.
  Index iterations = 0;
  double residual = 0.0;
};

/// y_i = x_{omega_i} + Normal(0, noise_sigma^2).
Measurement measure(const Vector& x, const SamplingSet& sampling, double noise_sigma, Rng& rng);

/// x_rec = U_k (M U_k)^+ y, pseudo-inverse cut at 1e-12 sigma_max.
Recovery recover_known_basis(const Matrix& Uk, const Measurement& meas);

/// x_rec = U_k (P^{-1/2} M U_k)^+ P^{-1/2} y. Throws MissingWeights.
Recovery recover_known_basis_weighted(const Matrix& Uk, const Measurement& meas);

/// Minimiser of ||P^{-1/2}(M z - y)||^2 + gamma z^T L^r z, by conjugate
/// gradient on (M^T P^{-1} M + gamma L^r) z = M^T P^{-1} y with L^r applied
/// as r successive products. Unweighted samplings use P = I. Throws
/// SolverDiverged when the residual target is missed at the iteration cap.
Recovery recover_unknown_basis(const LaplacianView& L, const Measurement& meas,
                               const RecoveryParams& params = {});

/// ||P^{-1/2}(M z - y)||^2 + gamma z^T L^r z.
double regularized_objective(const LaplacianView& L, const Measurement& meas,
                             const RecoveryParams& params, const Vector& z);

/// ||x_rec - x|| / ||x||.
double relative_error(const Vector& x, const Vector& x_rec);

}  // namespace gdpp
