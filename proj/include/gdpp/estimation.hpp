#pragma once

#include <span>
#include <vector>

#include "gdpp/graph.hpp"
#include "gdpp/rng.hpp"
#include "gdpp/spectral.hpp"
#include "gdpp/types.hpp"

namespace gdpp {

/// Polynomial p(lambda) = sum_l c_l T_l(2 lambda / lambda_max - 1) on
/// [0, lambda_max]. Applied to L through the three-term recurrence on the
/// shifted operator, so powers of L are never formed.
class PolynomialFilter {
 public:
  PolynomialFilter(std::vector<double> chebyshev_coefficients, double lambda_max,
                   double fit_error = 0.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double lambda_max() const noexcept { return lambda_max_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  /// Max deviation from the target on the fit grid.
  double fit_error() const noexcept { return fit_error_; }

  double operator()(double lambda) const;
  /// p(L) X using `degree()` applications of L to X's columns.
  Matrix apply(const LaplacianView& L, const Matrix& X) const;

 private:
  std::vector<double> coeffs_;
  double lambda_max_;
  double fit_error_;
};

/// Chebyshev interpolation of `h` at the d + 1 Chebyshev-Gauss nodes of
/// [0, lambda_max]. Fit error measured on `grid_points` equispaced points.
PolynomialFilter fit_filter(const SpectralResponse& h, int d, double lambda_max,
                            int grid_points = 1000);

/// Interpolates sqrt(f); f must be >= 0 on the interval.
PolynomialFilter fit_sqrt_filter(const SpectralResponse& f, int d, double lambda_max,
                                 int grid_points = 1000);

/// Jackson-damped Chebyshev expansion of 1{lambda <= cutoff}.
PolynomialFilter jackson_lowpass_filter(double cutoff, int d, double lambda_max,
                                        int grid_points = 1000);

/// R in R^{N x n} with i.i.d. Normal(0, 1/n) entries.
Matrix gaussian_sketch(Index rows, int width, Rng& rng);

/// 20 ceil(ln N), at least 1.
int default_sketch_width(Index n);

struct PiEstimateOptions {
  int degree = 30;
  int sketch_width = 0;  // 0 selects default_sketch_width(N)
  double power_tol = 1e-3;
};

/// pi_hat_i = || row i of p(L) R ||^2 with p ~ sqrt(g_q) on [0, lambda_N].
Vector estimate_pi(const LaplacianView& L, double q, Rng& rng, const PiEstimateOptions& opts = {});
Vector estimate_pi(const LaplacianView& L, double q, int d, int n, Rng& rng);

struct LeverageOptions {
  int degree = 50;
  int sketch_width = 0;
  double power_tol = 1e-3;
  /// Up to this size lambda_k, lambda_{k+1} come from a dense eigenvalue
  /// solve; above it they are located by bisection on sketched eigenvalue
  /// counts.
  Index dense_limit = kDenseNodeLimit;
  int count_bisection_steps = 30;
};

/// p_hat*_i proportional to || row i of p(L) R ||^2, p a damped low-pass
/// with cutoff midway between the estimates of lambda_k and lambda_{k+1};
/// normalised to sum to 1. k = N returns the exact uniform law.
Vector estimate_leverage_scores(const LaplacianView& L, Index k, Rng& rng,
                                const LeverageOptions& opts = {});
Vector estimate_leverage_scores(const LaplacianView& L, Index k, int d, int n, Rng& rng);

/// Sketched estimate of #{i : lambda_i <= cutoff}.
double estimate_eigenvalue_count(const LaplacianView& L, double cutoff, double lambda_max,
                                 const Matrix& sketch, int d);

/// Recovery weights pi_hat at the given nodes; zeros are floored at 1e-12
/// with a warning since the reweighting divides by them.
std::vector<double> weights_from_estimate(const Vector& pi_hat, std::span<const Index> nodes);

}  // namespace gdpp
