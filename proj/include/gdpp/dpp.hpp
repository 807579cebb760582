#pragma once

#include <span>

#include "gdpp/rng.hpp"
#include "gdpp/sampling_set.hpp"
#include "gdpp/spectral.hpp"
#include "gdpp/types.hpp"

namespace gdpp {

/// K = V diag(mu) V^T with 0 <= mu <= 1. V may hold fewer than N columns;
/// omitted directions have mu = 0. Eigenvalues within 1e-10 of [0, 1] are
/// clamped, anything further out is rejected.
class MarginalKernel {
 public:
  MarginalKernel(Vector eigenvalues, Matrix eigenvectors);

  /// Eigendecomposes a dense symmetric matrix.
  static MarginalKernel from_matrix(const Matrix& K);

  Index size() const noexcept { return vectors_.rows(); }
  const Vector& eigenvalues() const noexcept { return values_; }
  const Matrix& eigenvectors() const noexcept { return vectors_; }
  /// pi_i = K_ii.
  const Vector& diagonal() const noexcept { return diag_; }
  double entry(Index i, Index j) const;
  Matrix restriction(std::span<const Index> nodes) const;
  Matrix dense() const;

 private:
  Vector values_;
  Matrix vectors_;
  Vector diag_;
};

/// K_k = U_k U_k^T.
MarginalKernel ideal_lowpass_kernel(const SpectralBasis& basis, Index k);

/// K_q = U g_q(Lambda) U^T = q (L + q I)^{-1}.
MarginalKernel wilson_kernel_explicit(const SpectralBasis& basis, double q);

/// Spectral sampler: Bernoulli(mu_n) selection of eigenvectors, then the
/// projection-DPP elimination loop. Weights are K_ii of the sampled nodes.
/// Throws NumericalDegeneracy if a selection distribution loses mass.
SamplingSet dpp_sample(const MarginalKernel& kernel, Rng& rng);

/// P(S subset of A) = det(K_S).
double inclusion_probability(const MarginalKernel& kernel, std::span<const Index> nodes);

struct SizeMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// |A| is a sum of independent Bernoulli(mu_i).
SizeMoments sample_size_moments(const MarginalKernel& kernel);

/// K_ii at each sampled node; throws ZeroMarginal if one vanishes.
std::vector<double> dpp_weight_matrix(const MarginalKernel& kernel, std::span<const Index> nodes);

}  // namespace gdpp
