#include "gdpp/spectral.hpp"

#include <cmath>
#include <string>

#include "gdpp/error.hpp"

namespace gdpp {

SpectralBasis eigendecompose(const LaplacianView& L, Index max_nodes) {
  if (L.size() > max_nodes)
    throw Error(ErrorCode::TooLarge, "dense eigendecomposition guarded off above " +
                                         std::to_string(max_nodes) + " nodes (got " +
                                         std::to_string(L.size()) + ")");
  SpectralBasis basis;
  if (L.size() == 0) return basis;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(L.dense());
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");
  basis.eigenvalues = solver.eigenvalues().cwiseMax(0.0);
  basis.eigenvectors = solver.eigenvectors();
  return basis;
}

Matrix fourier_basis_k(const SpectralBasis& basis, Index k) {
  if (k < 1 || k > basis.size())
    throw Error(ErrorCode::OutOfRange, "k = " + std::to_string(k) + " outside [1, " +
                                           std::to_string(basis.size()) + "]");
  return basis.eigenvectors.leftCols(k);
}

bool has_spectral_gap(const SpectralBasis& basis, Index k, double rel_tol) {
  if (k < 1 || k > basis.size())
    throw Error(ErrorCode::OutOfRange, "k outside the spectrum");
  if (k == basis.size()) return true;
  const double a = basis.eigenvalues[k - 1], b = basis.eigenvalues[k];
  const double scale = std::max(1.0, basis.eigenvalues[basis.size() - 1]);
  return b - a > rel_tol * scale;
}

Vector generate_bandlimited_signal(const Matrix& Uk, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector alpha(Uk.cols());
  do {
    for (Index i = 0; i < alpha.size(); ++i) alpha[i] = normal(rng);
  } while (alpha.norm() == 0.0);
  alpha /= alpha.norm();
  return Uk * alpha;
}

Vector generate_bandlimited_signal(const Matrix& Uk, std::uint64_t seed) {
  Rng rng(seed);
  return generate_bandlimited_signal(Uk, rng);
}

Vector apply_filter(const SpectralBasis& basis, const SpectralResponse& h, const Vector& x) {
  if (x.size() != basis.size()) throw Error(ErrorCode::ShapeMismatch, "filter: length mismatch");
  Vector coeffs = basis.eigenvectors.transpose() * x;
  for (Index i = 0; i < coeffs.size(); ++i) coeffs[i] *= h(basis.eigenvalues[i]);
  return basis.eigenvectors * coeffs;
}

double largest_eigenvalue_estimate(const LaplacianView& L, const PowerIterationOptions& opts) {
  const Index n = L.size();
  if (n == 0) throw Error(ErrorCode::InvalidParams, "empty graph");
  const double gershgorin = 2.0 * L.graph().max_degree();
  if (gershgorin == 0.0) return 0.0;

  Rng rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = 1.0 + 1e-3 * normal(rng);
  v.normalize();

  double rho_prev = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    Vector w = L.apply(v);
    const double rho = v.dot(w);
    const double wn = w.norm();
    if (wn == 0.0) return 0.0;
    // A stalled Rayleigh quotient alone can sit well below lambda_max when
    // the top of the spectrum is crowded; the residual bounds the distance
    // to an eigenvalue.
    const double residual = std::sqrt(std::max(0.0, wn * wn - rho * rho));
    if (it > 0 && std::abs(rho - rho_prev) < opts.tol * std::abs(rho) &&
        residual <= opts.tol * std::abs(rho))
      return std::min(rho * (1.0 + opts.tol), gershgorin);
    rho_prev = rho;
    v = w / wn;
  }
  throw Error(ErrorCode::ConvergenceFailure,
              "power iteration did not converge in " + std::to_string(opts.max_iterations) +
                  " iterations");
}

}  // namespace gdpp
