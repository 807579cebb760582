#include "gdpp/recovery.hpp"

#include <cmath>
#include <string>

#include "gdpp/error.hpp"

namespace gdpp {

namespace {

constexpr double kPinvCut = 1e-12;

void check_measurement(const Measurement& meas, Index n) {
  if (static_cast<std::size_t>(meas.y.size()) != meas.sampling.size())
    throw Error(ErrorCode::ShapeMismatch, "one measurement per sampled node required");
  meas.sampling.validate(n);
}

Recovery solve_in_span(const Matrix& Uk, const Matrix& A, const Vector& b) {
  Recovery out;
  Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double smax = s.size() ? s[0] : 0.0;
  Vector coeff = svd.matrixU().transpose() * b;
  for (Index i = 0; i < s.size(); ++i) coeff[i] = s[i] > kPinvCut * smax ? coeff[i] / s[i] : 0.0;
  out.x = Uk * (svd.matrixV() * coeff);
  out.sigma_min = A.rows() < Uk.cols() || s.size() == 0 ? 0.0 : s[s.size() - 1];
  out.ill_conditioned = !(out.sigma_min > kPinvCut);
  return out;
}

}  // namespace

Measurement measure(const Vector& x, const SamplingSet& sampling, double noise_sigma, Rng& rng) {
  if (!(noise_sigma >= 0.0)) throw Error(ErrorCode::InvalidParams, "noise sigma must be >= 0");
  sampling.validate(x.size());
  Measurement meas;
  meas.sampling = sampling;
  meas.noise_sigma = noise_sigma;
  meas.y.resize(static_cast<Index>(sampling.size()));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t t = 0; t < sampling.size(); ++t) {
    double v = x[sampling.nodes[t]];
    if (noise_sigma > 0.0) v += noise_sigma * normal(rng);
    meas.y[static_cast<Index>(t)] = v;
  }
  return meas;
}

Recovery recover_known_basis(const Matrix& Uk, const Measurement& meas) {
  check_measurement(meas, Uk.rows());
  const auto m = static_cast<Index>(meas.sampling.size());
  Matrix A(m, Uk.cols());
  for (Index t = 0; t < m; ++t) A.row(t) = Uk.row(meas.sampling.nodes[static_cast<std::size_t>(t)]);
  return solve_in_span(Uk, A, meas.y);
}

Recovery recover_known_basis_weighted(const Matrix& Uk, const Measurement& meas) {
  if (!meas.sampling.weighted())
    throw Error(ErrorCode::MissingWeights, "weighted recovery needs sampling weights");
  check_measurement(meas, Uk.rows());
  const auto m = static_cast<Index>(meas.sampling.size());
  Matrix A(m, Uk.cols());
  Vector b(m);
  for (Index t = 0; t < m; ++t) {
    const double s = 1.0 / std::sqrt(meas.sampling.weights[static_cast<std::size_t>(t)]);
    A.row(t) = s * Uk.row(meas.sampling.nodes[static_cast<std::size_t>(t)]);
    b[t] = s * meas.y[t];
  }
  return solve_in_span(Uk, A, b);
}

Recovery recover_unknown_basis(const LaplacianView& L, const Measurement& meas,
                               const RecoveryParams& params) {
  if (!(params.gamma > 0.0)) throw Error(ErrorCode::InvalidParams, "gamma must be > 0");
  if (params.r < 1) throw Error(ErrorCode::InvalidParams, "Laplacian power r must be >= 1");
  if (!(params.tolerance > 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance must be > 0");
  const Index n = L.size();
  check_measurement(meas, n);

  // M^T P^{-1} M is diagonal; duplicates accumulate.
  Vector data_diag = Vector::Zero(n);
  Vector rhs = Vector::Zero(n);
  for (std::size_t t = 0; t < meas.sampling.size(); ++t) {
    const double inv_w = meas.sampling.weighted() ? 1.0 / meas.sampling.weights[t] : 1.0;
    const Index v = meas.sampling.nodes[t];
    data_diag[v] += inv_w;
    rhs[v] += inv_w * meas.y[static_cast<Index>(t)];
  }
  auto op = [&](const Vector& z) {
    Vector out = L.apply_power(z, params.r);
    out *= params.gamma;
    out += data_diag.cwiseProduct(z);
    return out;
  };

  const Index max_it = params.max_iterations > 0 ? params.max_iterations : 10 * n;
  Recovery out;
  out.x = Vector::Zero(n);
  const double bnorm = rhs.norm();
  if (bnorm == 0.0) return out;

  Vector r = rhs, p = r, Ap(n);
  double rr = r.squaredNorm();
  const double target = params.tolerance * bnorm;
  Index it = 0;
  while (std::sqrt(rr) > target && it < max_it) {
    Ap = op(p);
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) break;
    const double alpha = rr / pAp;
    out.x += alpha * p;
    r -= alpha * Ap;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
    ++it;
  }
  out.iterations = it;
  out.residual = (rhs - op(out.x)).norm() / bnorm;
  if (std::sqrt(rr) > target)
    throw Error(ErrorCode::SolverDiverged,
                "CG residual " + std::to_string(std::sqrt(rr) / bnorm) + " above tolerance after " +
                    std::to_string(it) + " iterations");
  return out;
}

double regularized_objective(const LaplacianView& L, const Measurement& meas,
                             const RecoveryParams& params, const Vector& z) {
  check_measurement(meas, L.size());
  double data = 0.0;
  for (std::size_t t = 0; t < meas.sampling.size(); ++t) {
    const double d = z[meas.sampling.nodes[t]] - meas.y[static_cast<Index>(t)];
    const double inv_w = meas.sampling.weighted() ? 1.0 / meas.sampling.weights[t] : 1.0;
    data += inv_w * d * d;
  }
  // Even r: ||L^{r/2} z||^2. Odd r: quadratic form of L at L^{(r-1)/2} z.
  const Vector half = L.apply_power(z, params.r / 2);
  const double reg = params.r % 2 == 0 ? half.squaredNorm() : L.quadratic_form(half);
  return data + params.gamma * reg;
}

double relative_error(const Vector& x, const Vector& x_rec) {
  if (x.size() != x_rec.size()) throw Error(ErrorCode::ShapeMismatch, "signals differ in length");
  const double nx = x.norm();
  if (nx == 0.0) throw Error(ErrorCode::InvalidParams, "reference signal has zero norm");
  return (x_rec - x).norm() / nx;
}

}  // namespace gdpp
