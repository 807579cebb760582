#include "gdpp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gdpp/error.hpp"
#include "gdpp/rng.hpp"

namespace gdpp {

Graph::Graph(Index n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw Error(ErrorCode::InvalidGraph, "negative node count");
  for (Edge& e : edges_) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n)
      throw Error(ErrorCode::InvalidGraph,
                  "edge (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                      ") out of range for " + std::to_string(n) + " nodes");
    if (e.i == e.j)
      throw Error(ErrorCode::InvalidGraph, "self-loop on node " + std::to_string(e.i));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      throw Error(ErrorCode::InvalidGraph, "edge weights must be finite and > 0");
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t t = 1; t < edges_.size(); ++t)
    if (edges_[t].i == edges_[t - 1].i && edges_[t].j == edges_[t - 1].j)
      throw Error(ErrorCode::InvalidGraph,
                  "duplicate edge (" + std::to_string(edges_[t].i) + "," +
                      std::to_string(edges_[t].j) + ")");

  const auto un = static_cast<std::size_t>(n);
  offsets_.assign(un + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[static_cast<std::size_t>(e.i) + 1];
    ++offsets_[static_cast<std::size_t>(e.j) + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  adj_.resize(offsets_.back());
  adj_w_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    auto a = static_cast<std::size_t>(e.i), b = static_cast<std::size_t>(e.j);
    adj_[fill[a]] = e.j;
    adj_w_[fill[a]++] = e.w;
    adj_[fill[b]] = e.i;
    adj_w_[fill[b]++] = e.w;
  }
  // Sorted neighbor rows; degrees summed in that order.
  degree_.assign(un, 0.0);
  std::vector<std::pair<Index, double>> row;
  for (std::size_t v = 0; v < un; ++v) {
    row.clear();
    for (std::size_t t = offsets_[v]; t < offsets_[v + 1]; ++t) row.emplace_back(adj_[t], adj_w_[t]);
    std::sort(row.begin(), row.end());
    double d = 0.0;
    for (std::size_t t = 0; t < row.size(); ++t) {
      adj_[offsets_[v] + t] = row[t].first;
      adj_w_[offsets_[v] + t] = row[t].second;
      d += row[t].second;
    }
    degree_[v] = d;
  }
}

std::span<const Index> Graph::neighbors(Index i) const {
  auto v = static_cast<std::size_t>(i);
  return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const double> Graph::neighbor_weights(Index i) const {
  auto v = static_cast<std::size_t>(i);
  return {adj_w_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

double Graph::weight(Index i, Index j) const {
  auto nb = neighbors(i);
  auto it = std::lower_bound(nb.begin(), nb.end(), j);
  if (it == nb.end() || *it != j) return 0.0;
  return neighbor_weights(i)[static_cast<std::size_t>(it - nb.begin())];
}

double Graph::max_degree() const noexcept {
  return degree_.empty() ? 0.0 : *std::max_element(degree_.begin(), degree_.end());
}

double Graph::mean_degree() const noexcept {
  if (degree_.empty()) return 0.0;
  return std::accumulate(degree_.begin(), degree_.end(), 0.0) / static_cast<double>(n_);
}

void Graph::set_communities(std::vector<int> labels) {
  if (!labels.empty() && static_cast<Index>(labels.size()) != n_)
    throw Error(ErrorCode::ShapeMismatch, "community labels must cover every node");
  communities_ = std::move(labels);
}

// ---------------------------------------------------------------------------
// SBM

SbmProbabilities sbm_probabilities(const SbmParams& p) {
  if (p.n < 1 || p.communities < 1)
    throw Error(ErrorCode::InvalidParams, "SBM needs n >= 1 and k >= 1");
  if (p.n % p.communities != 0)
    throw Error(ErrorCode::InvalidParams, "n = " + std::to_string(p.n) +
                                              " is not divisible by k = " +
                                              std::to_string(p.communities));
  if (!(p.eps >= 0.0 && p.eps <= 1.0))
    throw Error(ErrorCode::InvalidParams, "eps must lie in [0, 1]");
  if (!(p.c >= 0.0) || p.c >= static_cast<double>(p.n))
    throw Error(ErrorCode::InvalidParams, "mean degree c must lie in [0, n)");
  const double n = static_cast<double>(p.n);
  const double block = n / static_cast<double>(p.communities);
  const double denom = (block - 1.0) + p.eps * (n - block);
  SbmProbabilities out;
  if (p.c == 0.0) return out;
  if (denom <= 0.0)
    throw Error(ErrorCode::InvalidParams, "no admissible pair for the requested degree");
  out.q1 = p.c / denom;
  out.q2 = p.eps * out.q1;
  if (out.q1 > 1.0)
    throw Error(ErrorCode::InvalidParams,
                "derived intra-community probability q1 = " + std::to_string(out.q1) + " > 1");
  return out;
}

namespace {

// Calls emit(t) for each index t in [0, count) kept independently with
// probability p, jumping over rejected indices geometrically.
template <class Emit>
void geometric_skip(std::uint64_t count, double p, Rng& rng, Emit&& emit) {
  if (count == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (std::uint64_t t = 0; t < count; ++t) emit(t);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t t = 0;
  bool first = true;
  while (true) {
    const double u = uniform01(rng);
    const double jump = std::floor(std::log1p(-u) / log_q);
    if (jump >= static_cast<double>(count)) return;
    const auto step = static_cast<std::uint64_t>(jump);
    t = first ? step : t + 1 + step;
    first = false;
    if (t >= count) return;
    emit(t);
  }
}

}  // namespace

Graph sbm_generate(const SbmParams& params, std::uint64_t seed, SbmSampling strategy) {
  const SbmProbabilities prob = sbm_probabilities(params);
  const Index n = params.n;
  const Index k = params.communities;
  const Index block = n / k;
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(params.c * static_cast<double>(n) / 2.0 * 1.1) + 16);

  if (strategy == SbmSampling::Auto)
    strategy = n <= 10000 ? SbmSampling::PairScan : SbmSampling::GeometricSkip;

  if (strategy == SbmSampling::PairScan) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) {
        const double p = (i / block == j / block) ? prob.q1 : prob.q2;
        if (uniform01(rng) < p) edges.push_back({i, j, 1.0});
      }
  } else {
    const auto b = static_cast<std::uint64_t>(block);
    for (Index a = 0; a < k; ++a) {
      const Index base = a * block;
      // Lower-triangle pairs (v, w), w < v, linearised as v (v - 1) / 2 + w.
      std::uint64_t v = 1, row_start = 0;
      geometric_skip(b * (b - 1) / 2, prob.q1, rng, [&](std::uint64_t t) {
        while (t >= row_start + v) {
          row_start += v;
          ++v;
        }
        const std::uint64_t w = t - row_start;
        edges.push_back({base + static_cast<Index>(w), base + static_cast<Index>(v), 1.0});
      });
      for (Index a2 = a + 1; a2 < k; ++a2) {
        const Index base2 = a2 * block;
        geometric_skip(b * b, prob.q2, rng, [&](std::uint64_t t) {
          edges.push_back({base + static_cast<Index>(t / b), base2 + static_cast<Index>(t % b), 1.0});
        });
      }
    }
  }

  Graph g(n, std::move(edges));
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = static_cast<int>(i * k / n);
  g.set_communities(std::move(labels));
  return g;
}

double critical_epsilon(double c, Index communities) {
  if (!(c > 1.0)) throw Error(ErrorCode::InvalidParams, "critical epsilon needs c > 1");
  if (communities < 1) throw Error(ErrorCode::InvalidParams, "critical epsilon needs k >= 1");
  const double s = std::sqrt(c);
  return (c - s) / (c + s * static_cast<double>(communities - 1));
}

Vector degrees(const Graph& g) {
  Vector d(g.node_count());
  for (Index i = 0; i < g.node_count(); ++i) d[i] = g.degree(i);
  return d;
}

std::vector<Index> connected_components(const Graph& g) {
  const Index n = g.node_count();
  std::vector<Index> label(static_cast<std::size_t>(n), -1);
  std::vector<Index> stack;
  Index next = 0;
  for (Index s = 0; s < n; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    label[static_cast<std::size_t>(s)] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Index v = stack.back();
      stack.pop_back();
      for (Index u : g.neighbors(v))
        if (label[static_cast<std::size_t>(u)] < 0) {
          label[static_cast<std::size_t>(u)] = next;
          stack.push_back(u);
        }
    }
    ++next;
  }
  return label;
}

Index component_count(const Graph& g) {
  auto labels = connected_components(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

// ---------------------------------------------------------------------------
// Laplacian

LaplacianView::LaplacianView(const Graph& g) : g_(&g), degrees_(gdpp::degrees(g)) {}

Vector LaplacianView::apply(const Vector& x) const {
  if (x.size() != size()) throw Error(ErrorCode::ShapeMismatch, "Laplacian apply: length mismatch");
  Vector y(size());
  for (Index i = 0; i < size(); ++i) {
    auto nb = g_->neighbors(i);
    auto w = g_->neighbor_weights(i);
    double acc = 0.0;
    for (std::size_t t = 0; t < nb.size(); ++t) acc += w[t] * (x[i] - x[nb[t]]);
    y[i] = acc;
  }
  return y;
}

void LaplacianView::apply_into(const Matrix& X, Matrix& Y) const {
  if (X.rows() != size()) throw Error(ErrorCode::ShapeMismatch, "Laplacian apply: row mismatch");
  Y.resize(X.rows(), X.cols());
  Y.setZero();
  // Row-major sweep over the adjacency; columns are independent.
  for (Index i = 0; i < size(); ++i) {
    auto nb = g_->neighbors(i);
    auto w = g_->neighbor_weights(i);
    for (std::size_t t = 0; t < nb.size(); ++t) Y.row(i) += w[t] * (X.row(i) - X.row(nb[t]));
  }
}

Matrix LaplacianView::apply(const Matrix& X) const {
  Matrix Y;
  apply_into(X, Y);
  return Y;
}

Vector LaplacianView::apply_power(const Vector& x, int power) const {
  Vector y = x;
  for (int p = 0; p < power; ++p) y = apply(y);
  return y;
}

double LaplacianView::quadratic_form(const Vector& x) const {
  double acc = 0.0;
  for (const Edge& e : g_->edges()) {
    const double d = x[e.i] - x[e.j];
    acc += e.w * d * d;
  }
  return acc;
}

Matrix LaplacianView::dense() const {
  Matrix L = Matrix::Zero(size(), size());
  for (const Edge& e : g_->edges()) {
    L(e.i, e.j) -= e.w;
    L(e.j, e.i) -= e.w;
  }
  for (Index i = 0; i < size(); ++i) L(i, i) = degrees_[i];
  return L;
}

Eigen::SparseMatrix<double> LaplacianView::sparse() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * g_->edge_count() + static_cast<std::size_t>(size()));
  for (const Edge& e : g_->edges()) {
    trips.emplace_back(e.i, e.j, -e.w);
    trips.emplace_back(e.j, e.i, -e.w);
  }
  for (Index i = 0; i < size(); ++i) trips.emplace_back(i, i, degrees_[i]);
  Eigen::SparseMatrix<double> L(size(), size());
  L.setFromTriplets(trips.begin(), trips.end());
  return L;
}

}  // namespace gdpp
