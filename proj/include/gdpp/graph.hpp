#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <span>
#include <vector>

#include "gdpp/types.hpp"

namespace gdpp {

struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 1.0;
};

/// Undirected graph with strictly positive weights, stored as a canonical
/// edge list (i < j, sorted) plus symmetric CSR adjacency. Immutable once
/// built.
class Graph {
 public:
  Graph() = default;
  /// Throws InvalidGraph on self-loops, non-positive or non-finite weights,
  /// out-of-range endpoints and duplicate pairs. Endpoint order is free.
  Graph(Index n, std::vector<Edge> edges);

  Index node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Index> neighbors(Index i) const;
  std::span<const double> neighbor_weights(Index i) const;
  /// W_ij, zero when the pair is not adjacent.
  double weight(Index i, Index j) const;
  double degree(Index i) const { return degree_[static_cast<std::size_t>(i)]; }
  double max_degree() const noexcept;
  double mean_degree() const noexcept;

  /// Community label per node, empty when unknown.
  const std::vector<int>& communities() const noexcept { return communities_; }
  void set_communities(std::vector<int> labels);

 private:
  Index n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Index> adj_;
  std::vector<double> adj_w_;
  std::vector<double> degree_;
  std::vector<int> communities_;
};

struct SbmParams {
  Index n = 100;
  Index communities = 2;
  double c = 16.0;    // target mean degree
  double eps = 0.0;   // q2 / q1
};

struct SbmProbabilities {
  double q1 = 0.0;  // intra-community
  double q2 = 0.0;  // inter-community
};

enum class SbmSampling { Auto, PairScan, GeometricSkip };

/// Solves c = q1 (N/k - 1) + q2 (N - N/k) with q2 = eps q1.
SbmProbabilities sbm_probabilities(const SbmParams& params);

/// Node i belongs to community floor(i k / N). Auto scans all pairs up to
/// 10^4 nodes and skips geometrically above that.
Graph sbm_generate(const SbmParams& params, std::uint64_t seed,
                   SbmSampling strategy = SbmSampling::Auto);

/// Detectability threshold (c - sqrt c) / (c + sqrt c (k - 1)).
double critical_epsilon(double c, Index communities);

Vector degrees(const Graph& g);

/// Component label per node (0-based, in order of lowest member).
std::vector<Index> connected_components(const Graph& g);
Index component_count(const Graph& g);

/// L = D - W applied as y_i = sum_j W_ij (x_i - x_j), so L 1 = 0 exactly.
/// Holds a reference: the graph must outlive the view.
class LaplacianView {
 public:
  explicit LaplacianView(const Graph& g);

  const Graph& graph() const noexcept { return *g_; }
  Index size() const noexcept { return g_->node_count(); }
  const Vector& degrees() const noexcept { return degrees_; }

  Vector apply(const Vector& x) const;
  /// Applies L to every column of X.
  Matrix apply(const Matrix& X) const;
  void apply_into(const Matrix& X, Matrix& Y) const;
  /// Applies L^power by repeated application.
  Vector apply_power(const Vector& x, int power) const;
  /// x^T L x = sum_{i<j} W_ij (x_i - x_j)^2.
  double quadratic_form(const Vector& x) const;

  Matrix dense() const;
  Eigen::SparseMatrix<double> sparse() const;

 private:
  const Graph* g_;
  Vector degrees_;
};

inline LaplacianView laplacian(const Graph& g) { return LaplacianView(g); }

}  // namespace gdpp
