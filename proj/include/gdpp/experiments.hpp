#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gdpp/graph.hpp"
#include "gdpp/types.hpp"

namespace gdpp {

enum class Basis { Known, Unknown };
enum class SweepVariable { Epsilon, M, Gamma };

const char* basis_name(Basis b) noexcept;
const char* sweep_name(SweepVariable s) noexcept;

/// Flat experiment description. `eps_fraction` and sweep values for
/// epsilon are fractions of the detectability threshold.
struct ExperimentConfig {
  Basis basis = Basis::Known;
  SweepVariable sweep = SweepVariable::Epsilon;
  std::vector<double> grid{0.1};
  /// Known basis: any of dpp-ideal, greedy-wce, greedy-mse, greedy-mv,
  /// maxvol. Unknown basis: wilson, iid.
  std::vector<std::string> samplers{"dpp-ideal", "greedy-wce", "greedy-mse", "greedy-mv", "maxvol"};

  Index n = 100;
  Index communities = 2;
  double c = 16.0;
  double eps_fraction = 0.1;
  Index k = 2;
  /// Target sample size when it is not the swept variable.
  Index m = 2;

  double gamma = 1e-5;
  int r = 4;
  double noise_sigma = 1e-4;
  double cg_tolerance = 1e-8;
  Index cg_max_iterations = 0;

  Index graphs = 20;
  Index signals = 50;

  int q_runs = 200;
  double q_tolerance = 0.05;
  int pi_degree = 30;
  int sketch_width = 0;
  int leverage_degree = 50;

  std::uint64_t seed = 1;
  /// Worker threads; 0 picks the hardware concurrency. Results do not
  /// depend on it.
  int threads = 0;

  bool operator==(const ExperimentConfig&) const = default;

  /// Throws InvalidParams when a grid is empty, counts are < 1 or a sampler
  /// does not fit the basis.
  void validate() const;
};

enum class Figure { Fig1a, Fig1b, Fig1c };
/// Desk-scale defaults: 20 graphs x 50 signals per point.
ExperimentConfig default_config(Figure figure);
/// 100 graphs per point: 10^4 trials (a) or 3500 (b, c).
void apply_full_scale(ExperimentConfig& cfg, Figure figure);

std::string format_config(const ExperimentConfig& cfg);
/// Starts from the defaults and overrides per line. Throws ParseError with
/// the line number and key for unknown keys or bad values.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config(const std::string& path);

struct ResultRow {
  double sweep_value = 0.0;
  std::string sampler;
  double mean_error = 0.0;
  double p10 = 0.0;
  double p90 = 0.0;
  double mean_size = 0.0;
  Index trials = 0;
  /// Per-trial errors in (graph, signal) order; not serialised.
  std::vector<double> errors;
};

/// Logged once per generated graph.
struct GraphRecord {
  double sweep_value = 0.0;
  Index graph = 0;
  Index components = 0;
  bool spectral_gap = true;
};

struct ResultTable {
  SweepVariable sweep = SweepVariable::Epsilon;
  std::vector<ResultRow> rows;
  std::vector<GraphRecord> graphs;

  const ResultRow& row(double sweep_value, const std::string& sampler) const;
};

/// Nearest-rank percentile: the ceil(p/100 * n)-th smallest value.
double nearest_rank_percentile(std::vector<double> values, double p);

/// Header `sweep,value,sampler,mean_error,p10,p90,mean_size,trials`.
void write_result_csv(const ResultTable& table, std::ostream& out);
ResultTable read_result_csv(std::istream& in);
void emit_csv(const ResultTable& table, const std::string& path);
/// `sweep,value,graph,components,spectral_gap`.
void write_graph_log_csv(const ResultTable& table, std::ostream& out);

/// Every sampler draws K_k or a deterministic set on each graph; DPP sets are
/// recovered with the K_ii reweighting, deterministic ones without.
ResultTable run_experiment_known_basis(const ExperimentConfig& cfg);

/// Wilson's algorithm with q tuned to the target size and estimated
/// inclusion probabilities, against i.i.d. draws from the estimated leverage
/// law with the same number of nodes. A gamma sweep reuses the same samples
/// and measurements for every gamma.
ResultTable run_experiment_unknown_basis(const ExperimentConfig& cfg);

ResultTable run_experiment(const ExperimentConfig& cfg);

struct ScalabilityResult {
  Index n = 0;
  double q = 0.0;
  int runs = 0;
  double mean_size = 0.0;
  double mean_seconds = 0.0;  // per Wilson run
  double max_seconds = 0.0;
  double generation_seconds = 0.0;
  Index edges = 0;
};

/// Wilson on SBM(N, k=2, c=16, eps = eps_c/5), `runs` runs.
ScalabilityResult run_scalability_check(Index n, double q, std::uint64_t seed = 1, int runs = 10);
void write_scalability_csv(const ScalabilityResult& r, std::ostream& out);

}  // namespace gdpp
