#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gdpp/dpp.hpp"
#include "gdpp/error.hpp"
#include "gdpp/estimation.hpp"
#include "gdpp/wilson.hpp"
#include "test_util.hpp"

using namespace gdpp;

namespace {

SpectralBasis basis_of(const Graph& g) { return eigendecompose(LaplacianView(g)); }

// q with sum_i q / (q + lambda_i) = target, by bisection on log q.
double exact_q_for(const SpectralBasis& b, double target) {
  double lo = 1e-8, hi = 1e8;
  for (int it = 0; it < 200; ++it) {
    const double mid = std::sqrt(lo * hi);
    (expected_sample_size(b, mid) < target ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

// || row i of S R ||^2 for an explicit operator S.
Vector row_energy(const Matrix& S, const Matrix& R) { return (S * R).rowwise().squaredNorm(); }

}  // namespace

TEST(FitFilter, ConstantIsExact) {
  for (int d : {1, 5, 30}) {
    const PolynomialFilter p = fit_sqrt_filter([](double) { return 1.0; }, d, 7.0);
    EXPECT_LE(p.fit_error(), 1e-14);
    for (double l : {0.0, 1.3, 7.0}) EXPECT_NEAR(p(l), 1.0, 1e-14);
  }
}

TEST(FitFilter, NearConstantWilsonResponse) {
  const double lmax = 12.0;
  const PolynomialFilter p = fit_sqrt_filter(wilson_response(lmax * 1e6), 30, lmax);
  EXPECT_LT(p.fit_error(), 1e-3);
  EXPECT_NEAR(p(0.0), 1.0, 1e-3);
}

TEST(FitFilter, SqrtWilsonDegree30) {
  const PolynomialFilter p = fit_sqrt_filter(wilson_response(1.0), 30, 3.0);
  double sup = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double l = 3.0 * i / 999.0;
    sup = std::max(sup, std::abs(p(l) - std::sqrt(1.0 / (1.0 + l))));
  }
  EXPECT_LT(sup, 1e-6);
  EXPECT_LE(p.fit_error(), 1e-6);
  EXPECT_EQ(p.degree(), 30);
}

TEST(FitFilter, ReproducesLowDegreePolynomials) {
  const PolynomialFilter p = fit_filter([](double l) { return 2.0 - 3.0 * l + 0.5 * l * l; }, 2, 4.0);
  for (double l : {0.0, 0.7, 2.5, 4.0}) EXPECT_NEAR(p(l), 2.0 - 3.0 * l + 0.5 * l * l, 1e-12);
}

TEST(FitFilter, InvalidParams) {
  const auto one = [](double) { return 1.0; };
  EXPECT_THROW(fit_filter(one, 0, 1.0), Error);
  EXPECT_THROW(fit_filter(one, 3, 0.0), Error);
  try {
    fit_sqrt_filter([](double l) { return 1.0 - l; }, 5, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
  }
}

// p(L) X against U p(Lambda) U^T X.
TEST(PolynomialFilter, ApplyMatchesSpectralEvaluation) {
  const Graph g = test::random_weighted_graph(40, 0.15, 1);
  const LaplacianView L(g);
  const SpectralBasis b = basis_of(g);
  const double lmax = b.eigenvalues.maxCoeff() * 1.01;
  Rng rng(1);
  const Matrix X = gaussian_sketch(40, 3, rng);
  for (const PolynomialFilter& p : {fit_filter(wilson_response(0.4), 30, lmax),
                                    jackson_lowpass_filter(lmax / 3, 50, lmax)}) {
    const Matrix via_basis = apply_filter(b, [&](double l) { return p(l); }, Matrix(X));
    EXPECT_LE((p.apply(L, X) - via_basis).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(JacksonLowpass, ShapeAndRange) {
  const PolynomialFilter p = jackson_lowpass_filter(2.0, 50, 10.0);
  EXPECT_GT(p(0.0), 0.95);
  EXPECT_LT(std::abs(p(10.0)), 0.05);
  for (int i = 0; i <= 200; ++i) {
    const double v = p(10.0 * i / 200);
    EXPECT_GE(v, -1e-12);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
}

TEST(Sketch, EntryLawAndWidth) {
  Rng rng(2);
  const int n = 50;
  const Matrix R = gaussian_sketch(400, n, rng);
  ASSERT_EQ(R.cols(), n);
  EXPECT_TRUE(R.allFinite());
  const double count = static_cast<double>(R.size());
  const double mean = R.mean();
  const double var = (R.array() - mean).square().sum() / (count - 1);
  EXPECT_NEAR(mean, 0.0, 4 * std::sqrt(1.0 / n / count));
  // Var of the sample variance of Normal(0, s2) entries is 2 s2^2 / count.
  EXPECT_NEAR(var, 1.0 / n, 4 * std::sqrt(2.0 / count) / n);
  // E[R R^T] = I: the diagonal averages to 1.
  EXPECT_NEAR((R * R.transpose()).diagonal().mean(), 1.0, 4 * std::sqrt(2.0 / n / 400));

  EXPECT_EQ(default_sketch_width(100), 20 * 5);
  EXPECT_EQ(default_sketch_width(2), 20);
  EXPECT_EQ(default_sketch_width(1), 1);
  EXPECT_THROW(gaussian_sketch(10, 0, rng), Error);
}

// With the exact sqrt filter, E[||delta_i^T S R||^2] = pi_i.
TEST(EstimatePi, ExactFilterOracleIsUnbiased) {
  const Graph g = test::sbm(100, 0.2, 3);
  const SpectralBasis b = basis_of(g);
  const double q = exact_q_for(b, 2.0);
  const Vector pi = wilson_kernel_explicit(b, q).diagonal();
  Vector s(b.size());
  for (Index i = 0; i < s.size(); ++i) s[i] = std::sqrt(q / (q + b.eigenvalues[i]));
  const Matrix S = b.eigenvectors * s.asDiagonal() * b.eigenvectors.transpose();
  Rng rng(3);
  const int sketches = 200;
  Matrix draws(100, sketches);
  for (int t = 0; t < sketches; ++t) draws.col(t) = row_energy(S, gaussian_sketch(100, default_sketch_width(100), rng));
  for (Index i = 0; i < 100; ++i) {
    const double mean = draws.row(i).mean();
    const double sd = std::sqrt((draws.row(i).array() - mean).square().sum() / (sketches - 1));
    EXPECT_NEAR(mean, pi[i], 4 * sd / std::sqrt(double(sketches))) << i;
  }
}

// The polynomial estimator is unbiased for the diagonal of p(L)^2.
TEST(EstimatePi, UnbiasedForItsPolynomial) {
  const Graph g = test::sbm(100, 0.3, 4);
  const LaplacianView L(g);
  const SpectralBasis b = basis_of(g);
  const double q = 1.0;
  PiEstimateOptions opts;
  opts.sketch_width = 40;
  const double lmax = largest_eigenvalue_estimate(L, opts.power_tol);
  const PolynomialFilter p = fit_sqrt_filter(wilson_response(q), opts.degree, lmax);
  Vector pv(b.size());
  for (Index i = 0; i < pv.size(); ++i) pv[i] = p(b.eigenvalues[i]) * p(b.eigenvalues[i]);
  const Vector target = (b.eigenvectors.array().square().matrix() * pv);
  Rng rng(4);
  const int reps = 200;
  Matrix draws(100, reps);
  for (int t = 0; t < reps; ++t) draws.col(t) = estimate_pi(L, q, rng, opts);
  for (Index i = 0; i < 100; ++i) {
    const double mean = draws.row(i).mean();
    const double sd = std::sqrt((draws.row(i).array() - mean).square().sum() / (reps - 1));
    EXPECT_NEAR(mean, target[i], 4 * sd / std::sqrt(double(reps)) + 1e-12) << i;
  }
  EXPECT_GE(draws.minCoeff(), 0.0);
}

TEST(EstimatePi, TraceAndConcentrationOnSbm) {
  for (std::uint64_t seed = 5; seed < 10; ++seed) {
    const Graph g = test::sbm(100, 0.2, seed);
    const LaplacianView L(g);
    const SpectralBasis b = basis_of(g);
    Rng rng(seed);
    const double q = tune_q(g, 2, rng, 200, 0.05);
    const Vector pi = wilson_kernel_explicit(b, q).diagonal();
    const Vector hat = estimate_pi(L, q, 30, default_sketch_width(100), rng);
    EXPECT_NEAR(hat.sum(), pi.sum(), 0.1 * pi.sum()) << "seed " << seed;
    int close = 0;
    for (Index i = 0; i < 100; ++i) close += std::abs(hat[i] - pi[i]) <= 0.5 * pi[i];
    EXPECT_GE(close, 95) << "seed " << seed;
  }
}

TEST(EstimatePi, EdgelessGraph) {
  const Graph g(1000, {});
  Rng rng(6);
  const Vector hat = estimate_pi(LaplacianView(g), 0.5, rng);
  const auto inside = (hat.array() >= 0.6 && hat.array() <= 1.4).count();
  EXPECT_GE(inside, 980);
  EXPECT_NEAR(hat.mean(), 1.0, 0.05);
}

TEST(EstimatePi, RunsWhereDenseSolveIsRefused) {
  const Graph g = test::sbm(100000, 0.2, 7);
  const LaplacianView L(g);
  EXPECT_THROW(eigendecompose(L), Error);
  Rng rng(7);
  PiEstimateOptions opts;
  opts.sketch_width = 4;
  const Vector hat = estimate_pi(L, 1e-3, rng, opts);
  ASSERT_EQ(hat.size(), 100000);
  EXPECT_GE(hat.minCoeff(), 0.0);
  EXPECT_TRUE(hat.allFinite());
}

TEST(EstimatePi, RejectsBadQ) {
  const Graph g = test::path_graph(5);
  Rng rng(8);
  EXPECT_THROW(estimate_pi(LaplacianView(g), 0.0, rng), Error);
}

TEST(Leverage, FullBandIsUniform) {
  const Graph g = test::sbm(60, 0.2, 9);
  Rng rng(9);
  const Vector p = estimate_leverage_scores(LaplacianView(g), 60, rng);
  for (Index i = 0; i < 60; ++i) EXPECT_NEAR(p[i], 1.0 / 60, 1e-15);
}

TEST(Leverage, CloseToExactOnSbm) {
  for (std::uint64_t seed = 10; seed < 15; ++seed) {
    const Graph g = test::sbm(100, 0.2, seed);
    const LaplacianView L(g);
    const SpectralBasis b = basis_of(g);
    const Index k = 2;
    const Vector exact = fourier_basis_k(b, k).rowwise().squaredNorm() / double(k);
    Rng rng(seed);
    const Vector hat = estimate_leverage_scores(L, k, rng);
    EXPECT_NEAR(hat.sum(), 1.0, 1e-12);
    EXPECT_GE(hat.minCoeff(), 0.0);
    EXPECT_LT(0.5 * (hat - exact).cwiseAbs().sum(), 0.1) << "seed " << seed;
  }
}

// Forces the count-bisection path used above the dense size limit.
TEST(Leverage, CountBisectionPath) {
  const Graph g = test::sbm(100, 0.2, 15);
  const LaplacianView L(g);
  const SpectralBasis b = basis_of(g);
  const Index k = 2;
  const Vector exact = fourier_basis_k(b, k).rowwise().squaredNorm() / double(k);
  LeverageOptions opts;
  opts.dense_limit = 10;
  Rng rng(15);
  const Vector hat = estimate_leverage_scores(L, k, rng, opts);
  EXPECT_NEAR(hat.sum(), 1.0, 1e-12);
  EXPECT_LT(0.5 * (hat - exact).cwiseAbs().sum(), 0.1);
}

TEST(Leverage, RejectsBadK) {
  const Graph g = test::path_graph(5);
  Rng rng(16);
  for (Index k : {Index(0), Index(6)}) EXPECT_THROW(estimate_leverage_scores(LaplacianView(g), k, rng), Error);
}

TEST(EigenvalueCount, MatchesExactCount) {
  const Graph g = test::sbm(100, 0.2, 17);
  const LaplacianView L(g);
  const SpectralBasis b = basis_of(g);
  const double lmax = largest_eigenvalue_estimate(L, 1e-3);
  Rng rng(17);
  const Matrix R = gaussian_sketch(100, 200, rng);
  for (Index k : {Index(2), Index(10), Index(50)}) {
    const double cutoff = 0.5 * (b.eigenvalues[k - 1] + b.eigenvalues[k]);
    EXPECT_NEAR(estimate_eigenvalue_count(L, cutoff, lmax, R, 50), double(k), 0.2 * k + 0.6) << k;
  }
}

TEST(WeightsFromEstimate, PicksAndFloors) {
  Vector pi(4);
  pi << 0.5, 0.0, 0.25, 1.0;
  const std::vector<Index> nodes{2, 1, 0};
  const auto w = weights_from_estimate(pi, nodes);
  EXPECT_EQ(w, (std::vector<double>{0.25, 1e-12, 0.5}));
  const std::vector<Index> bad{4};
  EXPECT_THROW(weights_from_estimate(pi, bad), Error);
}
