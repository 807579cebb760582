#include "gdpp/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gdpp/error.hpp"

namespace gdpp {

namespace {
constexpr double kTieTol = 1e-10;
constexpr double kSigmaFloor = 1e-12;

Matrix rows_of(const Matrix& Uk, std::span<const Index> rows) {
  Matrix out(static_cast<Index>(rows.size()), Uk.cols());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (rows[a] < 0 || rows[a] >= Uk.rows())
      throw Error(ErrorCode::OutOfRange, "row " + std::to_string(rows[a]) + " out of range");
    out.row(static_cast<Index>(a)) = Uk.row(rows[a]);
  }
  return out;
}
}  // namespace

std::string_view objective_name(Objective objective) noexcept {
  switch (objective) {
    case Objective::WCE: return "wce";
    case Objective::MSE: return "mse";
    case Objective::MV: return "mv";
  }
  return "?";
}

Vector singular_values_restriction(const Matrix& Uk, std::span<const Index> rows) {
  if (rows.empty()) throw Error(ErrorCode::InvalidParams, "restriction needs at least one row");
  Eigen::JacobiSVD<Matrix> svd(rows_of(Uk, rows));
  Vector s = svd.singularValues();  // descending
  return s.reverse();
}

double objective_value(Objective objective, const Vector& gram_eigenvalues, Index rank) {
  const Index k = gram_eigenvalues.size();
  const Index r = std::min(rank, k);
  const auto top = gram_eigenvalues.tail(r).cwiseMax(0.0);
  switch (objective) {
    case Objective::WCE:
      return top.minCoeff();
    case Objective::MSE: {
      double s = 0.0;
      for (Index i = 0; i < r; ++i) {
        if (top[i] <= 0.0) return -std::numeric_limits<double>::infinity();
        s += 1.0 / top[i];
      }
      return -s;
    }
    case Objective::MV:
      return top.prod();
  }
  return 0.0;
}

SamplingSet greedy_select(const Matrix& Uk, Objective objective, GreedyTrace* trace) {
  const Index n = Uk.rows(), k = Uk.cols();
  if (k < 1 || k > n) throw Error(ErrorCode::InvalidParams, "greedy selection needs 1 <= k <= N");

  SamplingSet out;
  out.method = "greedy-" + std::string(objective_name(objective));
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  Matrix gram = Matrix::Zero(k, k);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(k);
  if (trace) trace->objective.clear();

  for (Index step = 0; step < k; ++step) {
    double best = -std::numeric_limits<double>::infinity();
    Index best_node = -1;
    for (Index cand = 0; cand < n; ++cand) {
      if (taken[static_cast<std::size_t>(cand)]) continue;
      const Vector u = Uk.row(cand).transpose();
      solver.compute(gram + u * u.transpose(), Eigen::EigenvaluesOnly);
      const double gain = objective_value(objective, solver.eigenvalues(), step + 1);
      // MSE is -inf on rank-deficient candidates, so compare infinities
      // directly rather than through the relative tie tolerance.
      const bool better = std::isinf(best) ? gain > best : gain > best + kTieTol * std::abs(best);
      if (best_node < 0 || better) {
        best = gain;
        best_node = cand;
      }
    }
    taken[static_cast<std::size_t>(best_node)] = 1;
    out.nodes.push_back(best_node);
    const Vector u = Uk.row(best_node).transpose();
    gram += u * u.transpose();
    if (trace) trace->objective.push_back(best);
  }

  const Vector sigma = singular_values_restriction(Uk, out.nodes);
  if (!(sigma[0] > kSigmaFloor))
    throw Error(ErrorCode::DegenerateBasis, "greedy selection ended with sigma_min = 0");
  return out;
}

SamplingSet maxvol_select(const Matrix& Uk, const MaxvolOptions& opts) {
  SamplingSet out = greedy_select(Uk, Objective::MV);
  out.method = "maxvol";
  const Index k = Uk.cols();
  for (int swaps = 0;; ++swaps) {
    const Matrix square = rows_of(Uk, out.nodes);
    // B = U_k A^{-1}: |B_ij| is the |det| ratio after putting row i in slot j.
    const Matrix B = square.transpose().partialPivLu().solve(Uk.transpose()).transpose();
    Index bi = 0, bj = 0;
    double best = -1.0;
    for (Index i = 0; i < B.rows(); ++i)
      for (Index j = 0; j < k; ++j)
        if (std::abs(B(i, j)) > best) {
          best = std::abs(B(i, j));
          bi = i;
          bj = j;
        }
    if (best <= 1.0 + opts.delta) break;
    if (swaps >= opts.max_swaps)
      throw Error(ErrorCode::NoConvergence,
                  "maxvol exceeded " + std::to_string(opts.max_swaps) + " swaps");
    out.nodes[static_cast<std::size_t>(bj)] = bi;
  }
  return out;
}

Vector leverage_distribution(const Matrix& Uk) {
  return Uk.rowwise().squaredNorm() / static_cast<double>(Uk.cols());
}

SamplingSet iid_leverage_sample(const Vector& p_star, Index m, Rng& rng) {
  if (m < 1) throw Error(ErrorCode::InvalidParams, "m must be >= 1");
  if (p_star.size() == 0) throw Error(ErrorCode::InvalidDistribution, "empty distribution");
  std::vector<double> cdf(static_cast<std::size_t>(p_star.size()));
  double total = 0.0;
  for (Index i = 0; i < p_star.size(); ++i) {
    if (!(p_star[i] >= 0.0) || !std::isfinite(p_star[i]))
      throw Error(ErrorCode::InvalidDistribution, "probabilities must be finite and >= 0");
    total += p_star[i];
    cdf[static_cast<std::size_t>(i)] = total;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidDistribution, "probabilities sum to " + std::to_string(total));

  SamplingSet out;
  out.method = "iid";
  out.nodes.reserve(static_cast<std::size_t>(m));
  out.weights.reserve(static_cast<std::size_t>(m));
  for (Index t = 0; t < m; ++t) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) it = std::prev(cdf.end());
    Index node = it - cdf.begin();
    while (p_star[node] == 0.0 && node > 0) --node;
    out.nodes.push_back(node);
    out.weights.push_back(static_cast<double>(m) * p_star[node]);
  }
  return out;
}

}  // namespace gdpp
