#pragma once

#include <cstdint>
#include <functional>

#include "gdpp/graph.hpp"
#include "gdpp/rng.hpp"
#include "gdpp/types.hpp"

namespace gdpp {

/// Eigenpairs of a Laplacian: eigenvalues ascending and clamped at zero,
/// eigenvectors as orthonormal columns. Sign and rotation inside degenerate
/// eigenspaces are whatever the solver produced.
struct SpectralBasis {
  Vector eigenvalues;
  Matrix eigenvectors;

  Index size() const noexcept { return eigenvalues.size(); }
};

inline constexpr Index kDenseNodeLimit = 5000;

/// Dense symmetric eigendecomposition. Throws TooLarge above `max_nodes`.
SpectralBasis eigendecompose(const LaplacianView& L, Index max_nodes = kDenseNodeLimit);

/// First k eigenvectors, N x k.
Matrix fourier_basis_k(const SpectralBasis& basis, Index k);

/// True when lambda_k < lambda_{k+1}, i.e. span(U_k) does not depend on the
/// solver's choice inside an eigenspace.
bool has_spectral_gap(const SpectralBasis& basis, Index k, double rel_tol = 1e-8);

/// x = U_k alpha, alpha standard normal renormalised to the unit sphere.
Vector generate_bandlimited_signal(const Matrix& Uk, Rng& rng);
Vector generate_bandlimited_signal(const Matrix& Uk, std::uint64_t seed);

using SpectralResponse = std::function<double(double)>;

/// U h(Lambda) U^T x.
Vector apply_filter(const SpectralBasis& basis, const SpectralResponse& h, const Vector& x);

/// g_q(lambda) = q / (q + lambda).
inline SpectralResponse wilson_response(double q) {
  return [q](double lambda) { return q / (q + lambda); };
}

/// Indicator of lambda <= cutoff.
inline SpectralResponse ideal_lowpass_response(double cutoff) {
  return [cutoff](double lambda) { return lambda <= cutoff ? 1.0 : 0.0; };
}

struct PowerIterationOptions {
  double tol = 1e-3;
  int max_iterations = 10000;
  std::uint64_t seed = 0x5eed;
};

/// Power iteration on L for lambda_N. The returned value is inflated by
/// (1 + tol) and capped by the Gershgorin bound 2 max_i D_ii, so [0, value]
/// covers the spectrum. Throws ConvergenceFailure at the iteration cap.
double largest_eigenvalue_estimate(const LaplacianView& L, const PowerIterationOptions& opts = {});
inline double largest_eigenvalue_estimate(const LaplacianView& L, double tol) {
  PowerIterationOptions opts;
  opts.tol = tol;
  return largest_eigenvalue_estimate(L, opts);
}

}  // namespace gdpp
