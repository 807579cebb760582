#include "gdpp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gdpp/error.hpp"

namespace gdpp {

PolynomialFilter::PolynomialFilter(std::vector<double> chebyshev_coefficients, double lambda_max,
                                   double fit_error)
    : coeffs_(std::move(chebyshev_coefficients)), lambda_max_(lambda_max), fit_error_(fit_error) {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidParams, "polynomial needs a coefficient");
  if (!(lambda_max > 0.0)) throw Error(ErrorCode::InvalidParams, "lambda_max must be > 0");
}

double PolynomialFilter::operator()(double lambda) const {
  const double x = 2.0 * lambda / lambda_max_ - 1.0;
  // Clenshaw.
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t l = coeffs_.size(); l-- > 1;) {
    const double b0 = coeffs_[l] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return coeffs_[0] + x * b1 - b2;
}

Matrix PolynomialFilter::apply(const LaplacianView& L, const Matrix& X) const {
  const double scale = 2.0 / lambda_max_;
  auto shifted = [&](const Matrix& in, Matrix& out) {
    L.apply_into(in, out);
    out = scale * out - in;
  };
  Matrix acc = coeffs_[0] * X;
  if (coeffs_.size() == 1) return acc;
  Matrix prev = X, cur, next;
  shifted(X, cur);
  acc += coeffs_[1] * cur;
  for (std::size_t l = 2; l < coeffs_.size(); ++l) {
    shifted(cur, next);
    next = 2.0 * next - prev;
    acc += coeffs_[l] * next;
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return acc;
}

namespace {

void check_fit_args(int d, double lambda_max, int grid_points) {
  if (d < 1) throw Error(ErrorCode::InvalidParams, "polynomial degree must be >= 1");
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max))
    throw Error(ErrorCode::InvalidParams, "interval [0, lambda_max] needs lambda_max > 0");
  if (grid_points < 2) throw Error(ErrorCode::InvalidParams, "fit grid needs >= 2 points");
}

double grid_error(const PolynomialFilter& p, const SpectralResponse& target, int grid_points) {
  double worst = 0.0;
  for (int t = 0; t < grid_points; ++t) {
    const double lambda = p.lambda_max() * t / (grid_points - 1);
    worst = std::max(worst, std::abs(p(lambda) - target(lambda)));
  }
  return worst;
}

}  // namespace

PolynomialFilter fit_filter(const SpectralResponse& h, int d, double lambda_max, int grid_points) {
  check_fit_args(d, lambda_max, grid_points);
  const int nodes = d + 1;
  std::vector<double> samples(static_cast<std::size_t>(nodes));
  std::vector<double> theta(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    theta[static_cast<std::size_t>(j)] = std::numbers::pi * (j + 0.5) / nodes;
    const double x = std::cos(theta[static_cast<std::size_t>(j)]);
    samples[static_cast<std::size_t>(j)] = h(0.5 * lambda_max * (x + 1.0));
  }
  std::vector<double> c(static_cast<std::size_t>(nodes), 0.0);
  for (int l = 0; l < nodes; ++l) {
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j)
      acc += samples[static_cast<std::size_t>(j)] * std::cos(l * theta[static_cast<std::size_t>(j)]);
    c[static_cast<std::size_t>(l)] = 2.0 * acc / nodes;
  }
  c[0] *= 0.5;
  PolynomialFilter fit(std::move(c), lambda_max);
  return PolynomialFilter(fit.coefficients(), lambda_max, grid_error(fit, h, grid_points));
}

PolynomialFilter fit_sqrt_filter(const SpectralResponse& f, int d, double lambda_max,
                                 int grid_points) {
  check_fit_args(d, lambda_max, grid_points);
  auto root = [&f](double lambda) {
    const double v = f(lambda);
    if (v < 0.0 || !std::isfinite(v))
      throw Error(ErrorCode::InvalidParams, "filter response must be finite and >= 0");
    return std::sqrt(v);
  };
  return fit_filter(root, d, lambda_max, grid_points);
}

PolynomialFilter jackson_lowpass_filter(double cutoff, int d, double lambda_max, int grid_points) {
  check_fit_args(d, lambda_max, grid_points);
  const double xc = std::clamp(2.0 * cutoff / lambda_max - 1.0, -1.0, 1.0);
  const double tc = std::acos(xc);
  const double pi = std::numbers::pi;
  const double alpha = pi / (d + 2);
  std::vector<double> c(static_cast<std::size_t>(d) + 1);
  c[0] = (pi - tc) / pi;
  for (int l = 1; l <= d; ++l) {
    const double step = -2.0 * std::sin(l * tc) / (pi * l);
    const double jackson = ((1.0 - l / (d + 2.0)) * std::sin(alpha) * std::cos(l * alpha) +
                            std::cos(alpha) * std::sin(l * alpha) / (d + 2.0)) /
                           std::sin(alpha);
    c[static_cast<std::size_t>(l)] = jackson * step;
  }
  PolynomialFilter fit(std::move(c), lambda_max);
  return PolynomialFilter(fit.coefficients(), lambda_max,
                          grid_error(fit, ideal_lowpass_response(cutoff), grid_points));
}

Matrix gaussian_sketch(Index rows, int width, Rng& rng) {
  if (width < 1) throw Error(ErrorCode::InvalidParams, "sketch width must be >= 1");
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(static_cast<double>(width)));
  Matrix R(rows, width);
  for (Index j = 0; j < R.cols(); ++j)
    for (Index i = 0; i < R.rows(); ++i) R(i, j) = normal(rng);
  return R;
}

int default_sketch_width(Index n) {
  if (n <= 1) return 1;
  return std::max(1, 20 * static_cast<int>(std::ceil(std::log(static_cast<double>(n)))));
}

namespace {

double spectrum_bound(const LaplacianView& L, double power_tol) {
  PowerIterationOptions opts;
  opts.tol = power_tol;
  const double lambda_max = largest_eigenvalue_estimate(L, opts);
  // Edgeless graph: any interval containing 0 works.
  return lambda_max > 0.0 ? lambda_max : 1.0;
}

}  // namespace

Vector estimate_pi(const LaplacianView& L, double q, Rng& rng, const PiEstimateOptions& opts) {
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidParams, "q must be > 0");
  const double lambda_max = spectrum_bound(L, opts.power_tol);
  const PolynomialFilter s = fit_sqrt_filter(wilson_response(q), opts.degree, lambda_max);
  const int width = opts.sketch_width > 0 ? opts.sketch_width : default_sketch_width(L.size());
  const Matrix SR = s.apply(L, gaussian_sketch(L.size(), width, rng));
  return SR.rowwise().squaredNorm();
}

Vector estimate_pi(const LaplacianView& L, double q, int d, int n, Rng& rng) {
  PiEstimateOptions opts;
  opts.degree = d;
  opts.sketch_width = n;
  return estimate_pi(L, q, rng, opts);
}

double estimate_eigenvalue_count(const LaplacianView& L, double cutoff, double lambda_max,
                                 const Matrix& sketch, int d) {
  const PolynomialFilter h = jackson_lowpass_filter(cutoff, d, lambda_max, 2);
  // Hutchinson: E[tr(R^T h(L) R)] = tr(h(L)) for E[R R^T] = I.
  return (sketch.array() * h.apply(L, sketch).array()).sum();
}

Vector estimate_leverage_scores(const LaplacianView& L, Index k, Rng& rng,
                                const LeverageOptions& opts) {
  const Index n = L.size();
  if (k < 1 || k > n) throw Error(ErrorCode::OutOfRange, "k must lie in [1, N]");
  if (k == n) return Vector::Constant(n, 1.0 / static_cast<double>(n));

  const double lambda_max = spectrum_bound(L, opts.power_tol);
  const int width = opts.sketch_width > 0 ? opts.sketch_width : default_sketch_width(n);
  const Matrix R = gaussian_sketch(n, width, rng);

  double cutoff;
  if (n <= opts.dense_limit) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(L.dense(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw Error(ErrorCode::ConvergenceFailure, "eigenvalue solve failed");
    cutoff = 0.5 * (solver.eigenvalues()[k - 1] + solver.eigenvalues()[k]);
  } else {
    // Bracket lambda_k and lambda_{k+1} by where the sketched count crosses
    // k - 1/2 and k + 1/2.
    const double kd = static_cast<double>(k);
    auto crossing = [&](double level) {
      double lo = 0.0, hi = lambda_max;
      for (int it = 0; it < opts.count_bisection_steps; ++it) {
        const double mid = 0.5 * (lo + hi);
        (estimate_eigenvalue_count(L, mid, lambda_max, R, opts.degree) < level ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    };
    cutoff = 0.5 * (crossing(kd - 0.5) + crossing(kd + 0.5));
  }

  const PolynomialFilter h = jackson_lowpass_filter(cutoff, opts.degree, lambda_max);
  Vector scores = h.apply(L, R).rowwise().squaredNorm();
  const double total = scores.sum();
  if (!(total > 0.0))
    throw Error(ErrorCode::NumericalDegeneracy, "estimated leverage scores vanish");
  return scores / total;
}

Vector estimate_leverage_scores(const LaplacianView& L, Index k, int d, int n, Rng& rng) {
  LeverageOptions opts;
  opts.degree = d;
  opts.sketch_width = n;
  return estimate_leverage_scores(L, k, rng, opts);
}

std::vector<double> weights_from_estimate(const Vector& pi_hat, std::span<const Index> nodes) {
  constexpr double kFloor = 1e-12;
  std::vector<double> w;
  w.reserve(nodes.size());
  for (Index v : nodes) {
    if (v < 0 || v >= pi_hat.size())
      throw Error(ErrorCode::OutOfRange, "node " + std::to_string(v) + " outside estimate");
    double pi = pi_hat[v];
    if (!(pi > kFloor)) {
      warn("estimated marginal of sampled node " + std::to_string(v) + " floored at 1e-12");
      pi = kFloor;
    }
    w.push_back(pi);
  }
  return w;
}

}  // namespace gdpp
