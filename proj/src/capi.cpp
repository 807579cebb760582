#include "gdpp/gdpp.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "gdpp/dpp.hpp"
#include "gdpp/error.hpp"
#include "gdpp/estimation.hpp"
#include "gdpp/experiments.hpp"
#include "gdpp/graph.hpp"
#include "gdpp/io.hpp"
#include "gdpp/recovery.hpp"
#include "gdpp/selection.hpp"
#include "gdpp/spectral.hpp"
#include "gdpp/wilson.hpp"

struct gdpp_graph {
  gdpp::Graph g;
};
struct gdpp_vector {
  gdpp::Vector v;
};
struct gdpp_sampling {
  gdpp::SamplingSet s;
  double q = 0.0;
};
struct gdpp_config {
  gdpp::ExperimentConfig cfg;
};
struct gdpp_table {
  gdpp::ResultTable t;
};

namespace {

thread_local std::string last_error;

[[maybe_unused]] const bool warnings_off = [] {
  gdpp::set_warnings_enabled(false);
  return true;
}();

gdpp_status fail(gdpp_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs body() and maps exceptions onto status codes.
template <class Body>
gdpp_status guarded(Body&& body) {
  try {
    last_error.clear();
    body();
    return GDPP_OK;
  } catch (const gdpp::Error& e) {
    return fail(static_cast<gdpp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GDPP_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(GDPP_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(GDPP_INTERNAL_ERROR, "unknown failure");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw gdpp::Error(gdpp::ErrorCode::InvalidParams, std::string(name) + " is NULL");
}

gdpp::Index to_index(size_t v) { return static_cast<gdpp::Index>(v); }

gdpp::Figure parse_figure(const char* figure) {
  require(figure, "figure");
  const std::string f(figure);
  if (f == "fig1a") return gdpp::Figure::Fig1a;
  if (f == "fig1b") return gdpp::Figure::Fig1b;
  if (f == "fig1c") return gdpp::Figure::Fig1c;
  throw gdpp::Error(gdpp::ErrorCode::InvalidParams, "unknown figure '" + f + "'");
}

gdpp::Matrix basis_k(const gdpp::Graph& g, size_t k) {
  return gdpp::fourier_basis_k(gdpp::eigendecompose(gdpp::LaplacianView(g)), to_index(k));
}

void sample_into(const gdpp::Graph& g, const gdpp_sample_options& o, gdpp_sampling& out) {
  using namespace gdpp;
  Rng rng(o.seed);
  const LaplacianView L(g);
  auto need_k = [&] {
    if (o.k < 1 || to_index(o.k) > g.node_count())
      throw Error(ErrorCode::OutOfRange, "k must lie in [1, N]");
  };
  auto estimated_width = [&] { return o.sketch_width > 0 ? o.sketch_width : default_sketch_width(g.node_count()); };

  switch (o.method) {
    case GDPP_METHOD_GREEDY_WCE:
    case GDPP_METHOD_GREEDY_MSE:
    case GDPP_METHOD_GREEDY_MV: {
      need_k();
      const Objective obj = o.method == GDPP_METHOD_GREEDY_WCE   ? Objective::WCE
                            : o.method == GDPP_METHOD_GREEDY_MSE ? Objective::MSE
                                                                 : Objective::MV;
      out.s = greedy_select(basis_k(g, o.k), obj);
      break;
    }
    case GDPP_METHOD_MAXVOL:
      need_k();
      out.s = maxvol_select(basis_k(g, o.k));
      break;
    case GDPP_METHOD_IID: {
      need_k();
      if (o.m < 1) throw Error(ErrorCode::InvalidParams, "iid sampling needs m >= 1");
      Vector p;
      if (o.weights == GDPP_WEIGHTS_ESTIMATED) {
        Rng lev_rng(derive_seed(o.seed, {stream_tag("leverage")}));
        p = estimate_leverage_scores(L, to_index(o.k), o.leverage_degree, estimated_width(), lev_rng);
      } else {
        p = leverage_distribution(basis_k(g, o.k));
      }
      out.s = iid_leverage_sample(p, to_index(o.m), rng);
      break;
    }
    case GDPP_METHOD_DPP_IDEAL: {
      need_k();
      if (o.weights == GDPP_WEIGHTS_ESTIMATED)
        throw Error(ErrorCode::InvalidParams, "dpp-ideal weights are exact by construction");
      const SpectralBasis basis = eigendecompose(L);
      out.s = dpp_sample(ideal_lowpass_kernel(basis, to_index(o.k)), rng);
      out.s.method = "dpp-ideal";
      break;
    }
    case GDPP_METHOD_WILSON: {
      double q = o.q;
      if (q > 0.0 && o.target_k > 0)
        throw Error(ErrorCode::InvalidParams, "give either q or target_k, not both");
      if (!(q > 0.0)) {
        if (o.target_k < 1) throw Error(ErrorCode::InvalidParams, "wilson needs q > 0 or target_k >= 1");
        Rng tune_rng(derive_seed(o.seed, {stream_tag("tune")}));
        q = tune_q(g, to_index(o.target_k), tune_rng, o.runs_per_probe, o.tune_tolerance);
      }
      out.q = q;
      out.s = wilson_sample(g, q, rng);
      if (o.weights == GDPP_WEIGHTS_EXACT) {
        const MarginalKernel K = wilson_kernel_explicit(eigendecompose(L), q);
        out.s.weights = dpp_weight_matrix(K, out.s.nodes);
      } else if (o.weights == GDPP_WEIGHTS_ESTIMATED) {
        Rng pi_rng(derive_seed(o.seed, {stream_tag("pi")}));
        const Vector pi_hat = estimate_pi(L, q, o.pi_degree, estimated_width(), pi_rng);
        out.s.weights = weights_from_estimate(pi_hat, out.s.nodes);
      }
      break;
    }
    default:
      throw Error(ErrorCode::InvalidParams, "unknown sampling method");
  }
  if (o.weights == GDPP_WEIGHTS_NONE) out.s.weights.clear();
}

}  // namespace

extern "C" {

const char* gdpp_version(void) { return "1.0.0"; }

const char* gdpp_status_name(gdpp_status status) {
  switch (status) {
    case GDPP_OK: return "Ok";
    case GDPP_NULL_ARGUMENT: return "NullArgument";
    case GDPP_INTERNAL_ERROR: return "InternalError";
    default:
      if (status >= GDPP_INVALID_PARAMS && status <= GDPP_IO_ERROR)
        return gdpp::error_code_name(static_cast<gdpp::ErrorCode>(status));
      return "Unknown";
  }
}

const char* gdpp_last_error(void) { return last_error.c_str(); }

void gdpp_set_warnings(int enabled) { gdpp::set_warnings_enabled(enabled != 0); }

#define GDPP_REQUIRE_OUT(p)                                     \
  do {                                                          \
    if ((p) == nullptr) return fail(GDPP_NULL_ARGUMENT, #p " is NULL"); \
  } while (0)

gdpp_status gdpp_sbm_generate(size_t n, size_t communities, double c, double eps, uint64_t seed,
                              gdpp_graph** out) {
  GDPP_REQUIRE_OUT(out);
  return guarded([&] {
    gdpp::SbmParams p;
    p.n = to_index(n);
    p.communities = to_index(communities);
    p.c = c;
    p.eps = eps;
    *out = new gdpp_graph{gdpp::sbm_generate(p, seed)};
  });
}

gdpp_status gdpp_critical_epsilon(double c, size_t communities, double* out) {
  GDPP_REQUIRE_OUT(out);
  return guarded([&] { *out = gdpp::critical_epsilon(c, to_index(communities)); });
}

gdpp_status gdpp_graph_from_edges(size_t n, size_t edge_count, const size_t* src, const size_t* dst,
                                  const double* weight, gdpp_graph** out) {
  GDPP_REQUIRE_OUT(out);
  if (edge_count > 0 && (src == nullptr || dst == nullptr))
    return fail(GDPP_NULL_ARGUMENT, "edge endpoints are NULL");
  return guarded([&] {
    std::vector<gdpp::Edge> edges(edge_count);
    for (size_t e = 0; e < edge_count; ++e)
      edges[e] = {to_index(src[e]), to_index(dst[e]), weight ? weight[e] : 1.0};
    *out = new gdpp_graph{gdpp::Graph(to_index(n), std::move(edges))};
  });
}

gdpp_status gdpp_graph_load(const char* mtx_path, const char* labels_path, gdpp_graph** out) {
  GDPP_REQUIRE_OUT(out);
  GDPP_REQUIRE_OUT(mtx_path);
  return guarded([&] {
    *out = new gdpp_graph{gdpp::load_graph(mtx_path, labels_path ? labels_path : "")};
  });
}

gdpp_status gdpp_graph_save(const gdpp_graph* g, const char* mtx_path, const char* labels_path) {
  GDPP_REQUIRE_OUT(g);
  GDPP_REQUIRE_OUT(mtx_path);
  return guarded([&] { gdpp::save_graph(g->g, mtx_path, labels_path ? labels_path : ""); });
}

size_t gdpp_graph_node_count(const gdpp_graph* g) { return g ? static_cast<size_t>(g->g.node_count()) : 0; }
size_t gdpp_graph_edge_count(const gdpp_graph* g) { return g ? g->g.edge_count() : 0; }
size_t gdpp_graph_component_count(const gdpp_graph* g) {
  return g ? static_cast<size_t>(gdpp::component_count(g->g)) : 0;
}

gdpp_status gdpp_graph_spectral_gap(const gdpp_graph* g, size_t k, int* out) {
  GDPP_REQUIRE_OUT(g);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] {
    *out = gdpp::has_spectral_gap(gdpp::eigendecompose(gdpp::LaplacianView(g->g)), to_index(k)) ? 1 : 0;
  });
}

void gdpp_graph_free(gdpp_graph* g) { delete g; }

gdpp_status gdpp_vector_create(const double* values, size_t n, gdpp_vector** out) {
  GDPP_REQUIRE_OUT(out);
  if (n > 0 && values == nullptr) return fail(GDPP_NULL_ARGUMENT, "values is NULL");
  return guarded([&] {
    auto v = std::make_unique<gdpp_vector>();
    v->v.resize(to_index(n));
    for (size_t i = 0; i < n; ++i) v->v[to_index(i)] = values[i];
    *out = v.release();
  });
}

size_t gdpp_vector_size(const gdpp_vector* v) { return v ? static_cast<size_t>(v->v.size()) : 0; }
const double* gdpp_vector_data(const gdpp_vector* v) { return v ? v->v.data() : nullptr; }

gdpp_status gdpp_vector_load(const char* path, gdpp_vector** out) {
  GDPP_REQUIRE_OUT(out);
  GDPP_REQUIRE_OUT(path);
  return guarded([&] {
    std::istringstream in(gdpp::read_file(path));
    *out = new gdpp_vector{gdpp::read_signal_csv(in)};
  });
}

gdpp_status gdpp_vector_save(const gdpp_vector* v, const char* path) {
  GDPP_REQUIRE_OUT(v);
  GDPP_REQUIRE_OUT(path);
  return guarded([&] {
    std::ostringstream os;
    gdpp::write_signal_csv(v->v, os);
    gdpp::write_file(path, os.str());
  });
}

gdpp_status gdpp_vector_load_node_values(const char* path, gdpp_vector** out) {
  GDPP_REQUIRE_OUT(out);
  GDPP_REQUIRE_OUT(path);
  return guarded([&] {
    std::istringstream in(gdpp::read_file(path));
    *out = new gdpp_vector{gdpp::read_node_values_csv(in)};
  });
}

gdpp_status gdpp_vector_save_node_values(const gdpp_vector* v, const char* path) {
  GDPP_REQUIRE_OUT(v);
  GDPP_REQUIRE_OUT(path);
  return guarded([&] {
    std::ostringstream os;
    gdpp::write_node_values_csv(v->v, os);
    gdpp::write_file(path, os.str());
  });
}

void gdpp_vector_free(gdpp_vector* v) { delete v; }

gdpp_status gdpp_bandlimited_signal(const gdpp_graph* g, size_t k, uint64_t seed, gdpp_vector** out) {
  GDPP_REQUIRE_OUT(g);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] { *out = new gdpp_vector{gdpp::generate_bandlimited_signal(basis_k(g->g, k), seed)}; });
}

void gdpp_sample_options_init(gdpp_sample_options* o) {
  if (!o) return;
  *o = gdpp_sample_options{};
  o->method = GDPP_METHOD_DPP_IDEAL;
  o->k = 2;
  o->m = 0;
  o->q = 0.0;
  o->target_k = 0;
  o->runs_per_probe = 200;
  o->tune_tolerance = 0.05;
  o->weights = GDPP_WEIGHTS_EXACT;
  o->pi_degree = 30;
  o->leverage_degree = 50;
  o->sketch_width = 0;
  o->seed = 1;
}

namespace {
constexpr const char* kMethodNames[] = {"greedy-wce", "greedy-mse", "greedy-mv", "maxvol",
                                        "iid",        "dpp-ideal",  "wilson"};
}

gdpp_status gdpp_method_from_name(const char* name, gdpp_method* out) {
  GDPP_REQUIRE_OUT(name);
  GDPP_REQUIRE_OUT(out);
  for (int i = 0; i < 7; ++i)
    if (std::strcmp(name, kMethodNames[i]) == 0) {
      *out = static_cast<gdpp_method>(i);
      return GDPP_OK;
    }
  return fail(GDPP_INVALID_PARAMS, std::string("unknown method '") + name + "'");
}

const char* gdpp_method_name(gdpp_method method) {
  const int i = static_cast<int>(method);
  return i >= 0 && i < 7 ? kMethodNames[i] : "unknown";
}

gdpp_status gdpp_sample(const gdpp_graph* g, const gdpp_sample_options* opts, gdpp_sampling** out) {
  GDPP_REQUIRE_OUT(g);
  GDPP_REQUIRE_OUT(opts);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] {
    auto s = std::make_unique<gdpp_sampling>();
    sample_into(g->g, *opts, *s);
    *out = s.release();
  });
}

gdpp_status gdpp_sampling_create(const size_t* nodes, const double* weights, size_t m,
                                 gdpp_sampling** out) {
  GDPP_REQUIRE_OUT(out);
  if (m > 0 && nodes == nullptr) return fail(GDPP_NULL_ARGUMENT, "nodes is NULL");
  return guarded([&] {
    auto s = std::make_unique<gdpp_sampling>();
    for (size_t t = 0; t < m; ++t) {
      s->s.nodes.push_back(to_index(nodes[t]));
      if (weights) s->s.weights.push_back(weights[t]);
    }
    // Node ranges are checked against the graph later; weights now.
    gdpp::Index bound = 0;
    for (gdpp::Index v : s->s.nodes) bound = std::max(bound, v + 1);
    s->s.validate(bound);
    *out = s.release();
  });
}

size_t gdpp_sampling_size(const gdpp_sampling* s) { return s ? s->s.size() : 0; }
size_t gdpp_sampling_node(const gdpp_sampling* s, size_t i) {
  return s && i < s->s.size() ? static_cast<size_t>(s->s.nodes[i]) : 0;
}
int gdpp_sampling_weighted(const gdpp_sampling* s) { return s && s->s.weighted() ? 1 : 0; }
double gdpp_sampling_weight(const gdpp_sampling* s, size_t i) {
  return s && i < s->s.weights.size() ? s->s.weights[i] : 0.0;
}
const char* gdpp_sampling_method(const gdpp_sampling* s) { return s ? s->s.method.c_str() : ""; }
double gdpp_sampling_q(const gdpp_sampling* s) { return s ? s->q : 0.0; }

gdpp_status gdpp_sampling_load(const char* path, gdpp_sampling** out) {
  GDPP_REQUIRE_OUT(path);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] {
    std::istringstream in(gdpp::read_file(path));
    *out = new gdpp_sampling{gdpp::read_sampling_csv(in)};
  });
}

gdpp_status gdpp_sampling_save(const gdpp_sampling* s, const char* path) {
  GDPP_REQUIRE_OUT(s);
  GDPP_REQUIRE_OUT(path);
  return guarded([&] {
    std::ostringstream os;
    gdpp::write_sampling_csv(s->s, os);
    gdpp::write_file(path, os.str());
  });
}

void gdpp_sampling_free(gdpp_sampling* s) { delete s; }

gdpp_status gdpp_measure(const gdpp_vector* x, const gdpp_sampling* s, double noise_sigma,
                         uint64_t seed, gdpp_vector** out) {
  GDPP_REQUIRE_OUT(x);
  GDPP_REQUIRE_OUT(s);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] {
    gdpp::Rng rng(seed);
    *out = new gdpp_vector{gdpp::measure(x->v, s->s, noise_sigma, rng).y};
  });
}

void gdpp_recover_options_init(gdpp_recover_options* o) {
  if (!o) return;
  const gdpp::RecoveryParams d;
  o->known_basis = 0;
  o->k = 2;
  o->gamma = d.gamma;
  o->r = d.r;
  o->tolerance = d.tolerance;
  o->max_iterations = 0;
}

gdpp_status gdpp_recover(const gdpp_graph* g, const gdpp_sampling* s, const gdpp_vector* y,
                         const gdpp_recover_options* opts, gdpp_vector** out) {
  GDPP_REQUIRE_OUT(g);
  GDPP_REQUIRE_OUT(s);
  GDPP_REQUIRE_OUT(y);
  GDPP_REQUIRE_OUT(opts);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] {
    gdpp::Measurement meas;
    meas.y = y->v;
    meas.sampling = s->s;
    gdpp::Recovery rec;
    if (opts->known_basis) {
      const gdpp::Matrix Uk = basis_k(g->g, opts->k);
      rec = s->s.weighted() ? gdpp::recover_known_basis_weighted(Uk, meas)
                            : gdpp::recover_known_basis(Uk, meas);
      if (rec.ill_conditioned) gdpp::warn("sigma_min(M U_k) <= 1e-12; pseudo-inverse result");
    } else {
      gdpp::RecoveryParams p;
      p.gamma = opts->gamma;
      p.r = opts->r;
      p.tolerance = opts->tolerance;
      p.max_iterations = to_index(opts->max_iterations);
      rec = gdpp::recover_unknown_basis(gdpp::LaplacianView(g->g), meas, p);
    }
    *out = new gdpp_vector{std::move(rec.x)};
  });
}

gdpp_status gdpp_relative_error(const gdpp_vector* x, const gdpp_vector* x_rec, double* out) {
  GDPP_REQUIRE_OUT(x);
  GDPP_REQUIRE_OUT(x_rec);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] { *out = gdpp::relative_error(x->v, x_rec->v); });
}

gdpp_status gdpp_estimate_pi(const gdpp_graph* g, double q, int degree, int sketch_width,
                             uint64_t seed, gdpp_vector** out) {
  GDPP_REQUIRE_OUT(g);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] {
    gdpp::Rng rng(seed);
    gdpp::PiEstimateOptions o;
    o.degree = degree;
    o.sketch_width = sketch_width;
    *out = new gdpp_vector{gdpp::estimate_pi(gdpp::LaplacianView(g->g), q, rng, o)};
  });
}

gdpp_status gdpp_tune_q(const gdpp_graph* g, size_t target_k, int runs_per_probe, double tolerance,
                        uint64_t seed, double* q, double* mean_size) {
  GDPP_REQUIRE_OUT(g);
  GDPP_REQUIRE_OUT(q);
  return guarded([&] {
    gdpp::Rng rng(seed);
    const gdpp::QTuning t = gdpp::tune_q_detailed(g->g, to_index(target_k), rng, runs_per_probe, tolerance);
    *q = t.q;
    if (mean_size) *mean_size = t.mean_size;
  });
}

gdpp_status gdpp_config_default(const char* figure, gdpp_config** out) {
  GDPP_REQUIRE_OUT(out);
  return guarded([&] { *out = new gdpp_config{gdpp::default_config(parse_figure(figure))}; });
}

gdpp_status gdpp_config_load(const char* path, gdpp_config** out) {
  GDPP_REQUIRE_OUT(path);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] { *out = new gdpp_config{gdpp::parse_config(path)}; });
}

gdpp_status gdpp_config_save(const gdpp_config* cfg, const char* path) {
  GDPP_REQUIRE_OUT(cfg);
  GDPP_REQUIRE_OUT(path);
  return guarded([&] { gdpp::write_file(path, gdpp::format_config(cfg->cfg)); });
}

gdpp_status gdpp_config_set(gdpp_config* cfg, const char* key, const char* value) {
  GDPP_REQUIRE_OUT(cfg);
  GDPP_REQUIRE_OUT(key);
  GDPP_REQUIRE_OUT(value);
  return guarded([&] {
    const std::string line = std::string(key) + " = " + value + "\n";
    if (line.find('\n') != line.size() - 1 || line.find('#') != std::string::npos)
      throw gdpp::Error(gdpp::ErrorCode::ParseError, "key and value must be single-line without '#'");
    cfg->cfg = gdpp::parse_config_text(gdpp::format_config(cfg->cfg) + line);
  });
}

gdpp_status gdpp_config_full_scale(gdpp_config* cfg, const char* figure) {
  GDPP_REQUIRE_OUT(cfg);
  return guarded([&] { gdpp::apply_full_scale(cfg->cfg, parse_figure(figure)); });
}

void gdpp_config_free(gdpp_config* cfg) { delete cfg; }

gdpp_status gdpp_experiment_run(const gdpp_config* cfg, gdpp_table** out) {
  GDPP_REQUIRE_OUT(cfg);
  GDPP_REQUIRE_OUT(out);
  return guarded([&] { *out = new gdpp_table{gdpp::run_experiment(cfg->cfg)}; });
}

size_t gdpp_table_row_count(const gdpp_table* t) { return t ? t->t.rows.size() : 0; }

gdpp_status gdpp_table_row(const gdpp_table* t, size_t i, gdpp_result_row* out) {
  GDPP_REQUIRE_OUT(t);
  GDPP_REQUIRE_OUT(out);
  if (i >= t->t.rows.size()) return fail(GDPP_OUT_OF_RANGE, "row index out of range");
  const auto& r = t->t.rows[i];
  *out = {r.sweep_value, r.sampler.c_str(), r.mean_error, r.p10, r.p90, r.mean_size,
          static_cast<size_t>(r.trials)};
  return GDPP_OK;
}

gdpp_status gdpp_table_save(const gdpp_table* t, const char* path) {
  GDPP_REQUIRE_OUT(t);
  GDPP_REQUIRE_OUT(path);
  return guarded([&] { gdpp::emit_csv(t->t, path); });
}

gdpp_status gdpp_table_save_graph_log(const gdpp_table* t, const char* path) {
  GDPP_REQUIRE_OUT(t);
  GDPP_REQUIRE_OUT(path);
  return guarded([&] {
    std::ostringstream os;
    gdpp::write_graph_log_csv(t->t, os);
    gdpp::write_file(path, os.str());
  });
}

void gdpp_table_free(gdpp_table* t) { delete t; }

gdpp_status gdpp_scalability_check(size_t n, double q, uint64_t seed, int runs, gdpp_scalability* out) {
  GDPP_REQUIRE_OUT(out);
  return guarded([&] {
    const gdpp::ScalabilityResult r = gdpp::run_scalability_check(to_index(n), q, seed, runs);
    *out = {static_cast<size_t>(r.n), static_cast<size_t>(r.edges), r.q, r.runs,
            r.mean_size, r.mean_seconds, r.max_seconds, r.generation_seconds};
  });
}

gdpp_status gdpp_scalability_save(const gdpp_scalability* r, const char* path) {
  GDPP_REQUIRE_OUT(r);
  GDPP_REQUIRE_OUT(path);
  return guarded([&] {
    gdpp::ScalabilityResult s;
    s.n = to_index(r->n);
    s.edges = to_index(r->edges);
    s.q = r->q;
    s.runs = r->runs;
    s.mean_size = r->mean_size;
    s.mean_seconds = r->mean_seconds;
    s.max_seconds = r->max_seconds;
    s.generation_seconds = r->generation_seconds;
    std::ostringstream os;
    gdpp::write_scalability_csv(s, os);
    gdpp::write_file(path, os.str());
  });
}

}  // extern "C"
