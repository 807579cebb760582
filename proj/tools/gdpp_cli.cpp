// gdpp command-line front end. Talks to the library only through gdpp.h.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "gdpp/gdpp.h"

namespace {

struct Failure {
  gdpp_status status;
};

void check(gdpp_status s) {
  if (s != GDPP_OK) {
    std::fprintf(stderr, "gdpp: %s\n", gdpp_last_error());
    throw Failure{s};
  }
}

// Owning wrappers so early exits release handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};
using Graph = Handle<gdpp_graph, gdpp_graph_free>;
using Vec = Handle<gdpp_vector, gdpp_vector_free>;
using Sampling = Handle<gdpp_sampling, gdpp_sampling_free>;
using Config = Handle<gdpp_config, gdpp_config_free>;
using Table = Handle<gdpp_table, gdpp_table_free>;

const char* opt_path(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DPP sampling and recovery of bandlimited graph signals"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "Print library warnings");

  std::uint64_t seed = 1;
  std::string out;
  auto common = [&](CLI::App* sub, bool out_required = true) {
    sub->add_option("--seed", seed, "Master RNG seed")->capture_default_str();
    auto* o = sub->add_option("--out", out, "Output path");
    if (out_required) o->required();
  };

  // generate-graph
  auto* gen = app.add_subcommand("generate-graph", "Draw an SBM graph (Matrix Market + labels CSV)");
  std::size_t n = 100, communities = 2;
  double c = 16.0, eps = -1.0, eps_fraction = -1.0;
  std::string labels_out;
  gen->add_option("--n", n, "Node count")->capture_default_str();
  gen->add_option("--communities", communities, "Equal-size communities")->capture_default_str();
  gen->add_option("--c", c, "Mean degree")->capture_default_str();
  auto* eps_opt = gen->add_option("--eps", eps, "q2 / q1");
  auto* frac_opt = gen->add_option("--eps-fraction", eps_fraction, "eps as a fraction of the threshold");
  eps_opt->excludes(frac_opt);
  gen->add_option("--labels", labels_out, "Community labels CSV");
  common(gen);

  // generate-signal
  auto* sig = app.add_subcommand("generate-signal", "Draw a unit-norm k-bandlimited signal");
  std::string graph_path, graph_labels;
  std::size_t k = 2;
  auto graph_input = [&](CLI::App* sub) {
    sub->add_option("--graph", graph_path, "Graph in Matrix Market format")->required()->check(CLI::ExistingFile);
    sub->add_option("--labels", graph_labels, "Optional community labels CSV")->check(CLI::ExistingFile);
  };
  graph_input(sig);
  sig->add_option("--k", k, "Bandlimit")->capture_default_str();
  common(sig);

  // sample
  auto* smp = app.add_subcommand("sample", "Draw a sampling set");
  std::string method = "dpp-ideal", weights = "exact";
  std::size_t m = 0, target_k = 0;
  double q = 0.0, tune_tol = 0.05;
  int runs = 200, degree = 0, sketch = 0;
  graph_input(smp);
  smp->add_option("--method", method, "Sampler")
      ->check(CLI::IsMember({"greedy-wce", "greedy-mse", "greedy-mv", "maxvol", "iid", "dpp-ideal", "wilson"}))
      ->capture_default_str();
  smp->add_option("--k", k, "Bandlimit")->capture_default_str();
  smp->add_option("--m", m, "Sample size (iid)");
  auto* q_opt = smp->add_option("--q", q, "Wilson absorption weight");
  auto* tk_opt = smp->add_option("--target-k", target_k, "Tune q to this mean sample size");
  q_opt->excludes(tk_opt);
  smp->add_option("--runs", runs, "Wilson runs per tuning probe")->capture_default_str();
  smp->add_option("--tune-tol", tune_tol, "Relative tolerance of the tuned mean size")->capture_default_str();
  smp->add_option("--weights", weights, "Reweighting values")
      ->check(CLI::IsMember({"exact", "estimated", "none"}))
      ->capture_default_str();
  smp->add_option("--degree", degree, "Polynomial degree for estimated weights (0: default)");
  smp->add_option("--sketch", sketch, "Sketch width (0: 20 ceil(ln N))");
  common(smp);

  // measure
  auto* mea = app.add_subcommand("measure", "Noisy samples y = M x + n");
  std::string signal_path, sampling_path;
  double sigma = 1e-4;
  mea->add_option("--signal", signal_path, "Signal CSV")->required()->check(CLI::ExistingFile);
  mea->add_option("--sampling", sampling_path, "Sampling CSV")->required()->check(CLI::ExistingFile);
  mea->add_option("--sigma", sigma, "Noise standard deviation")->capture_default_str();
  common(mea);

  // recover
  auto* rec = app.add_subcommand("recover", "Reconstruct a signal from measurements");
  std::string meas_path, reference;
  gdpp_recover_options ropts;
  gdpp_recover_options_init(&ropts);
  bool known_basis = false;
  std::size_t max_it = 0;
  graph_input(rec);
  rec->add_option("--sampling", sampling_path, "Sampling CSV")->required()->check(CLI::ExistingFile);
  rec->add_option("--measurements", meas_path, "Measurement CSV")->required()->check(CLI::ExistingFile);
  rec->add_option("--gamma", ropts.gamma, "Regularisation weight")->capture_default_str();
  rec->add_option("--r", ropts.r, "Laplacian power")->capture_default_str();
  rec->add_option("--tol", ropts.tolerance, "Relative CG residual")->capture_default_str();
  rec->add_option("--max-iterations", max_it, "CG cap (0: 10 N)");
  rec->add_flag("--known-basis", known_basis, "Pseudo-inverse in span(U_k) instead of the regularised solve");
  rec->add_option("--k", k, "Bandlimit for --known-basis")->capture_default_str();
  rec->add_option("--reference", reference, "True signal; prints the relative error")->check(CLI::ExistingFile);
  common(rec);

  // estimate-pi
  auto* est = app.add_subcommand("estimate-pi", "Sketched inclusion probabilities of Wilson's sampler");
  graph_input(est);
  int pi_degree = 30;
  auto* eq_opt = est->add_option("--q", q, "Absorption weight");
  auto* etk_opt = est->add_option("--target-k", target_k, "Tune q to this mean sample size");
  eq_opt->excludes(etk_opt);
  est->add_option("--runs", runs, "Wilson runs per tuning probe")->capture_default_str();
  est->add_option("--degree", pi_degree, "Chebyshev degree")->capture_default_str();
  est->add_option("--sketch", sketch, "Sketch width (0: 20 ceil(ln N))");
  common(est);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Desk-scale reproduction runs");
  std::string which, config_path, graph_log;
  std::vector<std::string> overrides;
  bool full_scale = false;
  long long graphs = 0, signals = 0;
  int threads = -1;
  std::size_t scale_n = 100000;
  double scale_q = 5e-4;
  int scale_runs = 10;
  exp->add_option("which", which, "fig1a | fig1b | fig1c | scale")
      ->required()
      ->check(CLI::IsMember({"fig1a", "fig1b", "fig1c", "scale"}));
  exp->add_option("--config", config_path, "key = value file (defaults follow the figure)")->check(CLI::ExistingFile);
  exp->add_option("--set", overrides, "key=value override, repeatable");
  exp->add_flag("--full-scale", full_scale, "100 graphs per point (10^4 or 3500 trials)");
  exp->add_option("--graphs", graphs, "Graphs per point");
  exp->add_option("--signals", signals, "Signals per graph");
  exp->add_option("--threads", threads, "Worker threads (0: all cores)");
  exp->add_option("--graph-log", graph_log, "Per-graph connectivity log CSV");
  exp->add_option("--n", scale_n, "scale: node count")->capture_default_str();
  exp->add_option("--q", scale_q, "scale: absorption weight")->capture_default_str();
  exp->add_option("--runs", scale_runs, "scale: Wilson runs")->capture_default_str();
  common(exp);

  CLI11_PARSE(app, argc, argv);
  gdpp_set_warnings(verbose ? 1 : 0);

  try {
    if (gen->parsed()) {
      if (eps_opt->count() == 0) {
        double ec = 0.0;
        check(gdpp_critical_epsilon(c, communities, &ec));
        eps = (frac_opt->count() ? eps_fraction : 0.2) * ec;
      }
      Graph g;
      check(gdpp_sbm_generate(n, communities, c, eps, seed, g.out()));
      check(gdpp_graph_save(g.get(), out.c_str(), opt_path(labels_out)));
      std::printf("nodes=%zu edges=%zu components=%zu eps=%.17g\n", gdpp_graph_node_count(g.get()),
                  gdpp_graph_edge_count(g.get()), gdpp_graph_component_count(g.get()), eps);
    } else if (sig->parsed()) {
      Graph g;
      check(gdpp_graph_load(graph_path.c_str(), opt_path(graph_labels), g.out()));
      int gap = 0;
      check(gdpp_graph_spectral_gap(g.get(), k, &gap));
      if (!gap) std::fprintf(stderr, "gdpp: warning: lambda_k = lambda_{k+1}; span(U_k) is not unique\n");
      Vec x;
      check(gdpp_bandlimited_signal(g.get(), k, seed, x.out()));
      check(gdpp_vector_save(x.get(), out.c_str()));
    } else if (smp->parsed()) {
      Graph g;
      check(gdpp_graph_load(graph_path.c_str(), opt_path(graph_labels), g.out()));
      gdpp_sample_options o;
      gdpp_sample_options_init(&o);
      check(gdpp_method_from_name(method.c_str(), &o.method));
      o.k = k;
      o.m = m;
      o.q = q;
      o.target_k = target_k;
      o.runs_per_probe = runs;
      o.tune_tolerance = tune_tol;
      o.weights = weights == "exact" ? GDPP_WEIGHTS_EXACT
                  : weights == "estimated" ? GDPP_WEIGHTS_ESTIMATED
                                           : GDPP_WEIGHTS_NONE;
      if (degree > 0) o.pi_degree = o.leverage_degree = degree;
      o.sketch_width = sketch;
      o.seed = seed;
      Sampling s;
      check(gdpp_sample(g.get(), &o, s.out()));
      check(gdpp_sampling_save(s.get(), out.c_str()));
      std::printf("method=%s size=%zu", gdpp_sampling_method(s.get()), gdpp_sampling_size(s.get()));
      if (o.method == GDPP_METHOD_WILSON) std::printf(" q=%.17g", gdpp_sampling_q(s.get()));
      std::printf("\n");
    } else if (mea->parsed()) {
      Vec x, y;
      Sampling s;
      check(gdpp_vector_load(signal_path.c_str(), x.out()));
      check(gdpp_sampling_load(sampling_path.c_str(), s.out()));
      check(gdpp_measure(x.get(), s.get(), sigma, seed, y.out()));
      check(gdpp_vector_save(y.get(), out.c_str()));
    } else if (rec->parsed()) {
      Graph g;
      Sampling s;
      Vec y, xr;
      check(gdpp_graph_load(graph_path.c_str(), opt_path(graph_labels), g.out()));
      check(gdpp_sampling_load(sampling_path.c_str(), s.out()));
      check(gdpp_vector_load(meas_path.c_str(), y.out()));
      ropts.known_basis = known_basis ? 1 : 0;
      ropts.k = k;
      ropts.max_iterations = max_it;
      check(gdpp_recover(g.get(), s.get(), y.get(), &ropts, xr.out()));
      check(gdpp_vector_save(xr.get(), out.c_str()));
      if (!reference.empty()) {
        Vec x;
        check(gdpp_vector_load(reference.c_str(), x.out()));
        double err = 0.0;
        check(gdpp_relative_error(x.get(), xr.get(), &err));
        std::printf("relative_error=%.17g\n", err);
      }
    } else if (est->parsed()) {
      Graph g;
      check(gdpp_graph_load(graph_path.c_str(), opt_path(graph_labels), g.out()));
      if (eq_opt->count() == 0) {
        if (etk_opt->count() == 0) throw CLI::ValidationError("estimate-pi needs --q or --target-k");
        check(gdpp_tune_q(g.get(), target_k, runs, 0.05, seed, &q, nullptr));
      }
      Vec pi;
      check(gdpp_estimate_pi(g.get(), q, pi_degree, sketch, seed, pi.out()));
      check(gdpp_vector_save_node_values(pi.get(), out.c_str()));
      double total = 0.0;
      for (std::size_t i = 0; i < gdpp_vector_size(pi.get()); ++i) total += gdpp_vector_data(pi.get())[i];
      std::printf("q=%.17g sum=%.17g\n", q, total);
    } else if (exp->parsed()) {
      if (which == "scale") {
        gdpp_scalability r;
        check(gdpp_scalability_check(scale_n, scale_q, seed, scale_runs, &r));
        check(gdpp_scalability_save(&r, out.c_str()));
        std::printf("n=%zu edges=%zu mean_size=%.3f mean_seconds=%.3f max_seconds=%.3f\n", r.n, r.edges,
                    r.mean_size, r.mean_seconds, r.max_seconds);
        return 0;
      }
      Config cfg;
      if (!config_path.empty()) {
        check(gdpp_config_load(config_path.c_str(), cfg.out()));
      } else {
        check(gdpp_config_default(which.c_str(), cfg.out()));
      }
      if (full_scale) check(gdpp_config_full_scale(cfg.get(), which.c_str()));
      for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--set expects key=value, got '" + kv + "'");
        check(gdpp_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
      }
      if (graphs > 0) check(gdpp_config_set(cfg.get(), "graphs", std::to_string(graphs).c_str()));
      if (signals > 0) check(gdpp_config_set(cfg.get(), "signals", std::to_string(signals).c_str()));
      if (threads >= 0) check(gdpp_config_set(cfg.get(), "threads", std::to_string(threads).c_str()));
      if (exp->get_option("--seed")->count())
        check(gdpp_config_set(cfg.get(), "seed", std::to_string(seed).c_str()));
      Table t;
      check(gdpp_experiment_run(cfg.get(), t.out()));
      check(gdpp_table_save(t.get(), out.c_str()));
      if (!graph_log.empty()) check(gdpp_table_save_graph_log(t.get(), graph_log.c_str()));
      for (std::size_t i = 0; i < gdpp_table_row_count(t.get()); ++i) {
        gdpp_result_row r;
        check(gdpp_table_row(t.get(), i, &r));
        std::printf("%-8.3g %-11s mean=%.4g p10=%.4g p90=%.4g |A|=%.3g trials=%zu\n", r.sweep_value,
                    r.sampler, r.mean_error, r.p10, r.p90, r.mean_size, r.trials);
      }
    }
  } catch (const Failure& f) {
    return static_cast<int>(f.status);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  return 0;
}
