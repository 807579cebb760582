#include "gdpp/dpp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gdpp/error.hpp"

namespace gdpp {

namespace {
constexpr double kClampTol = 1e-10;
constexpr double kDropTol = 1e-12;
}  // namespace

void SamplingSet::validate(Index n) const {
  for (Index v : nodes)
    if (v < 0 || v >= n)
      throw Error(ErrorCode::OutOfRange, "sampled node " + std::to_string(v) + " outside [0, " +
                                             std::to_string(n) + ")");
  if (!weights.empty()) {
    if (weights.size() != nodes.size())
      throw Error(ErrorCode::ShapeMismatch, "one weight per sampled node required");
    for (double w : weights)
      if (!(w > 0.0) || !std::isfinite(w))
        throw Error(ErrorCode::InvalidParams, "sampling weights must be finite and > 0");
  }
}

MarginalKernel::MarginalKernel(Vector eigenvalues, Matrix eigenvectors)
    : values_(std::move(eigenvalues)), vectors_(std::move(eigenvectors)) {
  if (values_.size() != vectors_.cols())
    throw Error(ErrorCode::ShapeMismatch, "one eigenvalue per kernel eigenvector required");
  for (Index i = 0; i < values_.size(); ++i) {
    double& mu = values_[i];
    if (!(mu >= -kClampTol && mu <= 1.0 + kClampTol))
      throw Error(ErrorCode::InvalidParams,
                  "kernel eigenvalue " + std::to_string(mu) + " outside [0, 1]");
    mu = std::clamp(mu, 0.0, 1.0);
  }
  diag_ = vectors_.array().square().matrix() * values_;
  diag_ = diag_.cwiseMax(0.0).cwiseMin(1.0);
}

MarginalKernel MarginalKernel::from_matrix(const Matrix& K) {
  if (K.rows() != K.cols()) throw Error(ErrorCode::ShapeMismatch, "kernel must be square");
  const double scale = std::max(1.0, K.cwiseAbs().maxCoeff());
  if ((K - K.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw Error(ErrorCode::InvalidParams, "kernel must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(K);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "kernel eigendecomposition failed");
  return MarginalKernel(solver.eigenvalues(), solver.eigenvectors());
}

double MarginalKernel::entry(Index i, Index j) const {
  return (vectors_.row(i).array() * vectors_.row(j).array() * values_.transpose().array()).sum();
}

Matrix MarginalKernel::restriction(std::span<const Index> nodes) const {
  const auto m = static_cast<Index>(nodes.size());
  Matrix rows(m, vectors_.cols());
  for (Index a = 0; a < m; ++a) rows.row(a) = vectors_.row(nodes[static_cast<std::size_t>(a)]);
  return rows * values_.asDiagonal() * rows.transpose();
}

Matrix MarginalKernel::dense() const {
  return vectors_ * values_.asDiagonal() * vectors_.transpose();
}

MarginalKernel ideal_lowpass_kernel(const SpectralBasis& basis, Index k) {
  return MarginalKernel(Vector::Ones(k), fourier_basis_k(basis, k));
}

MarginalKernel wilson_kernel_explicit(const SpectralBasis& basis, double q) {
  if (!(q > 0.0)) throw Error(ErrorCode::InvalidParams, "q must be > 0");
  Vector mu(basis.size());
  for (Index i = 0; i < mu.size(); ++i) mu[i] = q / (q + basis.eigenvalues[i]);
  return MarginalKernel(std::move(mu), basis.eigenvectors);
}

SamplingSet dpp_sample(const MarginalKernel& kernel, Rng& rng) {
  const Index n = kernel.size();
  const Vector& mu = kernel.eigenvalues();

  std::vector<Index> chosen;
  for (Index c = 0; c < mu.size(); ++c)
    if (uniform01(rng) < mu[c]) chosen.push_back(c);

  Matrix V(n, static_cast<Index>(chosen.size()));
  for (std::size_t c = 0; c < chosen.size(); ++c)
    V.col(static_cast<Index>(c)) = kernel.eigenvectors().col(chosen[c]);

  SamplingSet out;
  out.method = "dpp";
  Vector mass(n);
  while (V.cols() > 0) {
    const auto r = static_cast<double>(V.cols());
    mass = V.rowwise().squaredNorm() / r;
    const double total = mass.sum();
    if (std::abs(total - 1.0) > 1e-6)
      throw Error(ErrorCode::NumericalDegeneracy,
                  "selection distribution sums to " + std::to_string(total));

    // Inverse CDF in node order.
    const double u = uniform01(rng) * total;
    Index pick = n - 1;
    double acc = 0.0;
    for (Index i = 0; i < n; ++i) {
      acc += mass[i];
      if (u < acc && mass[i] > 0.0) {
        pick = i;
        break;
      }
    }
    while (pick > 0 && mass[pick] == 0.0) --pick;
    out.nodes.push_back(pick);

    // Restrict span(V) to the complement of e_pick: eliminate the pick row
    // with the column of largest |entry|, drop that column, re-orthonormalise.
    Index pivot = 0;
    V.row(pick).cwiseAbs().maxCoeff(&pivot);
    const Vector pivot_col = V.col(pivot);
    const double pivot_val = pivot_col[pick];
    Matrix next(n, V.cols() - 1);
    for (Index c = 0, t = 0; c < V.cols(); ++c) {
      if (c == pivot) continue;
      next.col(t) = V.col(c) - (V(pick, c) / pivot_val) * pivot_col;
      next(pick, t) = 0.0;
      ++t;
    }
    // Modified Gram-Schmidt. With orthonormal input no direction can
    // collapse; one that does means V had lost rank.
    for (Index c = 0; c < next.cols(); ++c) {
      Vector v = next.col(c);
      for (Index p = 0; p < c; ++p) v -= next.col(p).dot(v) * next.col(p);
      const double nv = v.norm();
      if (nv < kDropTol)
        throw Error(ErrorCode::NumericalDegeneracy, "eigenvector span lost rank during elimination");
      next.col(c) = v / nv;
    }
    V = std::move(next);
  }

  out.weights = dpp_weight_matrix(kernel, out.nodes);
  return out;
}

double inclusion_probability(const MarginalKernel& kernel, std::span<const Index> nodes) {
  if (nodes.empty()) return 1.0;
  const double det = kernel.restriction(nodes).partialPivLu().determinant();
  return det < 0.0 ? 0.0 : det;
}

SizeMoments sample_size_moments(const MarginalKernel& kernel) {
  const Vector& mu = kernel.eigenvalues();
  return {mu.sum(), (mu.array() * (1.0 - mu.array())).sum()};
}

std::vector<double> dpp_weight_matrix(const MarginalKernel& kernel, std::span<const Index> nodes) {
  std::vector<double> w;
  w.reserve(nodes.size());
  for (Index v : nodes) {
    if (v < 0 || v >= kernel.size())
      throw Error(ErrorCode::OutOfRange, "node " + std::to_string(v) + " outside the kernel");
    const double pi = kernel.diagonal()[v];
    if (!(pi > 0.0))
      throw Error(ErrorCode::ZeroMarginal, "marginal of node " + std::to_string(v) + " is zero");
    w.push_back(pi);
  }
  return w;
}

}  // namespace gdpp
