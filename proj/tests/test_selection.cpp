#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/QR>

#include "gdpp/error.hpp"
#include "gdpp/selection.hpp"
#include "gdpp/spectral.hpp"
#include "test_util.hpp"

using namespace gdpp;

namespace {

Matrix random_orthonormal(Index n, Index k, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> nd;
  Matrix A(n, k);
  for (Index i = 0; i < A.size(); ++i) A.data()[i] = nd(rng);
  Eigen::HouseholderQR<Matrix> qr(A);
  return qr.householderQ() * Matrix::Identity(n, k);
}

Matrix rows_of(const Matrix& U, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), U.cols());
  for (std::size_t a = 0; a < rows.size(); ++a) out.row(static_cast<Index>(a)) = U.row(rows[a]);
  return out;
}

double abs_det(const Matrix& U, const std::vector<Index>& rows) {
  return std::abs(rows_of(U, rows).determinant());
}

// det of the |S| x |S| row Gram matrix; equals the pseudo-determinant used
// before the set reaches k rows.
double gram_det(const Matrix& U, const std::vector<Index>& rows) {
  const Matrix R = rows_of(U, rows);
  return (R * R.transpose()).determinant();
}

double exhaustive_max_det(const Matrix& U) {
  const Index n = U.rows(), k = U.cols();
  double best = 0.0;
  std::vector<bool> pick(static_cast<std::size_t>(n), false);
  std::fill(pick.begin(), pick.begin() + k, true);
  do {
    std::vector<Index> rows;
    for (Index i = 0; i < n; ++i)
      if (pick[static_cast<std::size_t>(i)]) rows.push_back(i);
    best = std::max(best, abs_det(U, rows));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

bool swap_stable(const Matrix& U, const std::vector<Index>& rows, double delta) {
  const double base = abs_det(U, rows);
  const std::set<Index> in(rows.begin(), rows.end());
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (Index c = 0; c < U.rows(); ++c) {
      if (in.count(c)) continue;
      auto trial = rows;
      trial[a] = c;
      if (abs_det(U, trial) > (1 + delta) * base) return false;
    }
  return true;
}

constexpr Objective kAll[] = {Objective::WCE, Objective::MSE, Objective::MV};

}  // namespace

TEST(Restriction, HandValues) {
  const Matrix U = random_orthonormal(8, 3, 1);
  const std::vector<Index> all{0, 1, 2, 3, 4, 5, 6, 7};
  const Vector s_all = singular_values_restriction(U, all);
  ASSERT_EQ(s_all.size(), 3);
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(s_all[i], 1.0, 1e-12);
  const std::vector<Index> one{5};
  const Vector s1 = singular_values_restriction(U, one);
  ASSERT_EQ(s1.size(), 1);
  EXPECT_NEAR(s1[0], U.row(5).norm(), 1e-14);

  // Gram [[2, 1], [1, 2]] has eigenvalues 1 and 3.
  Matrix H(3, 2);
  H << 1, 0, 0, 1, 1, 1;
  const std::vector<Index> rows{0, 1, 2};
  const Vector s = singular_values_restriction(H, rows);
  EXPECT_NEAR(s[0], 1.0, 1e-14);
  EXPECT_NEAR(s[1], std::sqrt(3.0), 1e-14);
  EXPECT_THROW(singular_values_restriction(H, std::vector<Index>{}), Error);
}

TEST(Objective, HandValues) {
  const Vector full = (Vector(2) << 1.0, 3.0).finished();
  EXPECT_DOUBLE_EQ(objective_value(Objective::WCE, full, 2), 1.0);
  EXPECT_DOUBLE_EQ(objective_value(Objective::MSE, full, 2), -(1.0 + 1.0 / 3.0));
  EXPECT_DOUBLE_EQ(objective_value(Objective::MV, full, 2), 3.0);
  // One selected row: only the top Gram eigenvalue counts.
  const Vector partial = (Vector(2) << 0.0, 2.0).finished();
  EXPECT_DOUBLE_EQ(objective_value(Objective::WCE, partial, 1), 2.0);
  EXPECT_DOUBLE_EQ(objective_value(Objective::MSE, partial, 1), -0.5);
  EXPECT_DOUBLE_EQ(objective_value(Objective::MV, partial, 1), 2.0);
  EXPECT_EQ(objective_name(Objective::MSE), "mse");
}

TEST(Greedy, SingleVectorOnConnectedGraphPicksNodeZero) {
  const SpectralBasis b = eigendecompose(LaplacianView(test::sbm(60, 0.3, 2)));
  const Matrix U1 = fourier_basis_k(b, 1);
  for (Objective o : kAll) {
    const SamplingSet s = greedy_select(U1, o);
    EXPECT_EQ(s.nodes, std::vector<Index>{0}) << objective_name(o);
    EXPECT_TRUE(s.weights.empty());
  }
}

TEST(Greedy, TwoComponentsGetOneNodeEach) {
  const Graph g(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  const Matrix U2 = fourier_basis_k(eigendecompose(LaplacianView(g)), 2);
  for (Objective o : kAll) {
    const SamplingSet s = greedy_select(U2, o);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_NE(s.nodes[0] / 2, s.nodes[1] / 2) << objective_name(o);
  }
}

TEST(Greedy, MvWithinHalfOfExhaustiveOptimum) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 6 + static_cast<Index>(seed % 5), k = 1 + static_cast<Index>(seed % 3);
    const Matrix U = random_orthonormal(n, k, 100 + seed);
    const SamplingSet s = greedy_select(U, Objective::MV);
    EXPECT_GE(abs_det(U, s.nodes), 0.5 * exhaustive_max_det(U)) << "seed " << seed;
  }
}

TEST(Greedy, MvStepsMatchBruteForceAndGrowthBound) {
  const Matrix U = random_orthonormal(12, 4, 7);
  GreedyTrace trace;
  const SamplingSet s = greedy_select(U, Objective::MV, &trace);
  ASSERT_EQ(trace.objective.size(), 4u);
  const double max_row = U.rowwise().squaredNorm().maxCoeff();
  std::vector<Index> prefix;
  double prev = 1.0;
  for (std::size_t t = 0; t < s.nodes.size(); ++t) {
    double best = -1.0;
    for (Index c = 0; c < 12; ++c) {
      if (std::find(prefix.begin(), prefix.end(), c) != prefix.end()) continue;
      auto trial = prefix;
      trial.push_back(c);
      best = std::max(best, gram_det(U, trial));
    }
    prefix.push_back(s.nodes[t]);
    const double chosen = gram_det(U, prefix);
    EXPECT_GE(chosen, best - 1e-12) << "step " << t;
    EXPECT_NEAR(trace.objective[t], chosen, 1e-10);
    EXPECT_LE(trace.objective[t], prev * max_row + 1e-12);
    prev = trace.objective[t];
  }
}

TEST(Greedy, OutputsAreDistinctAndWellConditioned) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SpectralBasis b = eigendecompose(LaplacianView(test::sbm(100, 0.2, seed)));
    for (Index k : {Index(2), Index(5)}) {
      const Matrix Uk = fourier_basis_k(b, k);
      for (Objective o : kAll) {
        const SamplingSet s = greedy_select(Uk, o);
        ASSERT_EQ(static_cast<Index>(s.size()), k);
        EXPECT_EQ(std::set<Index>(s.nodes.begin(), s.nodes.end()).size(), s.size());
        EXPECT_GT(singular_values_restriction(Uk, s.nodes)[0], 1e-12);
      }
    }
  }
}

TEST(Greedy, RejectsBadK) {
  EXPECT_THROW(greedy_select(Matrix(3, 0), Objective::MV), Error);
  EXPECT_THROW(greedy_select(Matrix(Matrix::Zero(2, 3)), Objective::MV), Error);
}

TEST(Maxvol, FindsEmbeddedIdentity) {
  Matrix U = Matrix::Zero(5, 2);
  U(3, 0) = 1.0;
  U(1, 1) = 1.0;
  SamplingSet s = maxvol_select(U);
  std::sort(s.nodes.begin(), s.nodes.end());
  EXPECT_EQ(s.nodes, (std::vector<Index>{1, 3}));
}

TEST(Maxvol, ImprovesOnGreedyAndIsSwapStable) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 6 + static_cast<Index>(seed % 5), k = 2 + static_cast<Index>(seed % 2);
    const Matrix U = random_orthonormal(n, k, 200 + seed);
    const SamplingSet mv = maxvol_select(U);
    const SamplingSet gr = greedy_select(U, Objective::MV);
    EXPECT_GE(abs_det(U, mv.nodes), abs_det(U, gr.nodes) * (1 - 1e-12));
    EXPECT_TRUE(swap_stable(U, mv.nodes, 1e-2)) << "seed " << seed;
  }
}

TEST(Maxvol, SwapBudgetExhaustion) {
  // Find an instance where greedy MV is not swap-stable, then forbid swaps.
  bool found = false;
  for (std::uint64_t seed = 0; seed < 500 && !found; ++seed) {
    const Matrix U = random_orthonormal(10, 3, 300 + seed);
    if (swap_stable(U, greedy_select(U, Objective::MV).nodes, 1e-2)) continue;
    found = true;
    MaxvolOptions o;
    o.max_swaps = 0;
    try {
      maxvol_select(U, o);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Iid, PointMass) {
  Vector p = Vector::Zero(6);
  p[4] = 1.0;
  Rng rng(1);
  const SamplingSet s = iid_leverage_sample(p, 7, rng);
  EXPECT_EQ(s.nodes, std::vector<Index>(7, 4));
  EXPECT_EQ(s.weights, std::vector<double>(7, 7.0));
}

TEST(Iid, UniformCounts) {
  const Index n = 10, m = 10000;
  Rng rng(2);
  const SamplingSet s = iid_leverage_sample(Vector::Constant(n, 0.1), m, rng);
  std::vector<double> counts(n, 0.0);
  for (Index v : s.nodes) counts[static_cast<std::size_t>(v)] += 1;
  const double sd = std::sqrt(m * 0.1 * 0.9);
  for (double c : counts) EXPECT_NEAR(c, m * 0.1, 4 * sd);
  for (double w : s.weights) EXPECT_DOUBLE_EQ(w, m * 0.1);
}

TEST(Iid, ReweightingIdentity) {
  const Matrix Uk = fourier_basis_k(eigendecompose(LaplacianView(test::sbm(60, 0.3, 3))), 3);
  const Vector p = leverage_distribution(Uk);
  EXPECT_NEAR(p.sum(), 1.0, 1e-12);
  const Vector x = Uk * Vector::LinSpaced(3, 1.0, -0.5);
  Rng rng(3);
  std::vector<double> vals;
  for (int r = 0; r < 10000; ++r) {
    const SamplingSet s = iid_leverage_sample(p, 4, rng);
    double v = 0.0;
    for (std::size_t a = 0; a < s.size(); ++a) v += x[s.nodes[a]] * x[s.nodes[a]] / s.weights[a];
    vals.push_back(v);
  }
  const auto m = test::moments(vals);
  EXPECT_NEAR(m.mean, x.squaredNorm(), 4 * m.se());
}

TEST(Iid, InvalidDistribution) {
  Rng rng(4);
  const auto code = [&](const Vector& p, Index m) {
    try {
      iid_leverage_sample(p, m, rng);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code(Vector::Constant(4, 0.3), 2), ErrorCode::InvalidDistribution);
  EXPECT_EQ(code((Vector(2) << 1.5, -0.5).finished(), 2), ErrorCode::InvalidDistribution);
  EXPECT_EQ(code(Vector(), 2), ErrorCode::InvalidDistribution);
  EXPECT_EQ(code(Vector::Constant(4, 0.25), 0), ErrorCode::InvalidParams);
}
