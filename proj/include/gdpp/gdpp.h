/* C interface to libgdpp.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a gdpp_status; on failure the message is
 * available from gdpp_last_error() on the same thread until the next call.
 * Output handles are only written on success.
 */
#ifndef GDPP_H
#define GDPP_H

#include <stddef.h>
#include <stdint.h>

#if defined(GDPP_BUILDING_LIBRARY)
#define GDPP_API __attribute__((visibility("default")))
#else
#define GDPP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gdpp_status {
  GDPP_OK = 0,
  GDPP_INVALID_PARAMS = 1,
  GDPP_INVALID_GRAPH = 2,
  GDPP_OUT_OF_RANGE = 3,
  GDPP_TOO_LARGE = 4,
  GDPP_CONVERGENCE_FAILURE = 5,
  GDPP_NUMERICAL_DEGENERACY = 6,
  GDPP_ZERO_MARGINAL = 7,
  GDPP_DEGENERATE_BASIS = 8,
  GDPP_NO_CONVERGENCE = 9,
  GDPP_INVALID_DISTRIBUTION = 10,
  GDPP_SHAPE_MISMATCH = 11,
  GDPP_MISSING_WEIGHTS = 12,
  GDPP_SOLVER_DIVERGED = 13,
  GDPP_PARSE_ERROR = 14,
  GDPP_IO_ERROR = 15,
  GDPP_NULL_ARGUMENT = 100,
  GDPP_INTERNAL_ERROR = 101
} gdpp_status;

typedef struct gdpp_graph gdpp_graph;
typedef struct gdpp_vector gdpp_vector;
typedef struct gdpp_sampling gdpp_sampling;
typedef struct gdpp_config gdpp_config;
typedef struct gdpp_table gdpp_table;

GDPP_API const char* gdpp_version(void);
GDPP_API const char* gdpp_status_name(gdpp_status status);
GDPP_API const char* gdpp_last_error(void);
/* Library warnings go to stderr; they are off by default. */
GDPP_API void gdpp_set_warnings(int enabled);

/* Graphs */
GDPP_API gdpp_status gdpp_sbm_generate(size_t n, size_t communities, double c, double eps,
                                       uint64_t seed, gdpp_graph** out);
GDPP_API gdpp_status gdpp_critical_epsilon(double c, size_t communities, double* out);
GDPP_API gdpp_status gdpp_graph_from_edges(size_t n, size_t edge_count, const size_t* src,
                                           const size_t* dst, const double* weight,
                                           gdpp_graph** out);
/* labels_path may be NULL. */
GDPP_API gdpp_status gdpp_graph_load(const char* mtx_path, const char* labels_path,
                                     gdpp_graph** out);
GDPP_API gdpp_status gdpp_graph_save(const gdpp_graph* g, const char* mtx_path,
                                     const char* labels_path);
GDPP_API size_t gdpp_graph_node_count(const gdpp_graph* g);
GDPP_API size_t gdpp_graph_edge_count(const gdpp_graph* g);
GDPP_API size_t gdpp_graph_component_count(const gdpp_graph* g);
/* 1 when lambda_k < lambda_{k+1}. */
GDPP_API gdpp_status gdpp_graph_spectral_gap(const gdpp_graph* g, size_t k, int* out);
GDPP_API void gdpp_graph_free(gdpp_graph* g);

/* Real vectors (signals, measurements, per-node estimates) */
GDPP_API gdpp_status gdpp_vector_create(const double* values, size_t n, gdpp_vector** out);
GDPP_API size_t gdpp_vector_size(const gdpp_vector* v);
GDPP_API const double* gdpp_vector_data(const gdpp_vector* v);
/* Single column with header `value`. */
GDPP_API gdpp_status gdpp_vector_load(const char* path, gdpp_vector** out);
GDPP_API gdpp_status gdpp_vector_save(const gdpp_vector* v, const char* path);
/* `node,value`. */
GDPP_API gdpp_status gdpp_vector_load_node_values(const char* path, gdpp_vector** out);
GDPP_API gdpp_status gdpp_vector_save_node_values(const gdpp_vector* v, const char* path);
GDPP_API void gdpp_vector_free(gdpp_vector* v);

GDPP_API gdpp_status gdpp_bandlimited_signal(const gdpp_graph* g, size_t k, uint64_t seed,
                                             gdpp_vector** out);

/* Sampling */
typedef enum gdpp_method {
  GDPP_METHOD_GREEDY_WCE = 0,
  GDPP_METHOD_GREEDY_MSE = 1,
  GDPP_METHOD_GREEDY_MV = 2,
  GDPP_METHOD_MAXVOL = 3,
  GDPP_METHOD_IID = 4,
  GDPP_METHOD_DPP_IDEAL = 5,
  GDPP_METHOD_WILSON = 6
} gdpp_method;

typedef enum gdpp_weights {
  GDPP_WEIGHTS_EXACT = 0,     /* K_ii or m p*_i from a dense eigendecomposition */
  GDPP_WEIGHTS_ESTIMATED = 1, /* sketched estimates, no eigendecomposition */
  GDPP_WEIGHTS_NONE = 2
} gdpp_weights;

typedef struct gdpp_sample_options {
  gdpp_method method;
  size_t k;              /* bandlimit: greedy, maxvol, dpp-ideal, iid */
  size_t m;              /* iid sample size */
  double q;              /* wilson: used when > 0 */
  size_t target_k;       /* wilson: tune q to this mean size when q == 0 */
  int runs_per_probe;    /* wilson tuning */
  double tune_tolerance; /* wilson tuning, relative to target_k */
  gdpp_weights weights;
  int pi_degree;         /* estimated wilson weights */
  int leverage_degree;   /* estimated iid law */
  int sketch_width;      /* 0 selects 20 ceil(ln N) */
  uint64_t seed;
} gdpp_sample_options;

GDPP_API void gdpp_sample_options_init(gdpp_sample_options* opts);
GDPP_API gdpp_status gdpp_method_from_name(const char* name, gdpp_method* out);
GDPP_API const char* gdpp_method_name(gdpp_method method);

GDPP_API gdpp_status gdpp_sample(const gdpp_graph* g, const gdpp_sample_options* opts,
                                 gdpp_sampling** out);
/* weights may be NULL for an unweighted set. */
GDPP_API gdpp_status gdpp_sampling_create(const size_t* nodes, const double* weights, size_t m,
                                          gdpp_sampling** out);
GDPP_API size_t gdpp_sampling_size(const gdpp_sampling* s);
GDPP_API size_t gdpp_sampling_node(const gdpp_sampling* s, size_t i);
GDPP_API int gdpp_sampling_weighted(const gdpp_sampling* s);
GDPP_API double gdpp_sampling_weight(const gdpp_sampling* s, size_t i);
GDPP_API const char* gdpp_sampling_method(const gdpp_sampling* s);
/* The q a Wilson draw used, 0 for other methods. */
GDPP_API double gdpp_sampling_q(const gdpp_sampling* s);
/* `node,weight`; an empty weight column means unweighted. */
GDPP_API gdpp_status gdpp_sampling_load(const char* path, gdpp_sampling** out);
GDPP_API gdpp_status gdpp_sampling_save(const gdpp_sampling* s, const char* path);
GDPP_API void gdpp_sampling_free(gdpp_sampling* s);

/* Measurement and recovery */
GDPP_API gdpp_status gdpp_measure(const gdpp_vector* x, const gdpp_sampling* s,
                                  double noise_sigma, uint64_t seed, gdpp_vector** out);

typedef struct gdpp_recover_options {
  int known_basis;       /* nonzero: pseudo-inverse in span(U_k) */
  size_t k;
  double gamma;
  int r;
  double tolerance;
  size_t max_iterations; /* 0 selects 10 N */
} gdpp_recover_options;

GDPP_API void gdpp_recover_options_init(gdpp_recover_options* opts);
/* Weighted samplings are reweighted, unweighted ones use P = I. */
GDPP_API gdpp_status gdpp_recover(const gdpp_graph* g, const gdpp_sampling* s,
                                  const gdpp_vector* y, const gdpp_recover_options* opts,
                                  gdpp_vector** out);
GDPP_API gdpp_status gdpp_relative_error(const gdpp_vector* x, const gdpp_vector* x_rec,
                                         double* out);

/* Estimation */
GDPP_API gdpp_status gdpp_estimate_pi(const gdpp_graph* g, double q, int degree,
                                      int sketch_width, uint64_t seed, gdpp_vector** out);
GDPP_API gdpp_status gdpp_tune_q(const gdpp_graph* g, size_t target_k, int runs_per_probe,
                                 double tolerance, uint64_t seed, double* q,
                                 double* mean_size);

/* Experiments */
/* figure: "fig1a", "fig1b" or "fig1c". */
GDPP_API gdpp_status gdpp_config_default(const char* figure, gdpp_config** out);
GDPP_API gdpp_status gdpp_config_load(const char* path, gdpp_config** out);
GDPP_API gdpp_status gdpp_config_save(const gdpp_config* cfg, const char* path);
/* Same syntax and validation as one `key = value` line of a config file. */
GDPP_API gdpp_status gdpp_config_set(gdpp_config* cfg, const char* key, const char* value);
GDPP_API gdpp_status gdpp_config_full_scale(gdpp_config* cfg, const char* figure);
GDPP_API void gdpp_config_free(gdpp_config* cfg);

typedef struct gdpp_result_row {
  double sweep_value;
  const char* sampler; /* owned by the table */
  double mean_error;
  double p10;
  double p90;
  double mean_size;
  size_t trials;
} gdpp_result_row;

GDPP_API gdpp_status gdpp_experiment_run(const gdpp_config* cfg, gdpp_table** out);
GDPP_API size_t gdpp_table_row_count(const gdpp_table* t);
GDPP_API gdpp_status gdpp_table_row(const gdpp_table* t, size_t i, gdpp_result_row* out);
GDPP_API gdpp_status gdpp_table_save(const gdpp_table* t, const char* path);
GDPP_API gdpp_status gdpp_table_save_graph_log(const gdpp_table* t, const char* path);
GDPP_API void gdpp_table_free(gdpp_table* t);

typedef struct gdpp_scalability {
  size_t n;
  size_t edges;
  double q;
  int runs;
  double mean_size;
  double mean_seconds;
  double max_seconds;
  double generation_seconds;
} gdpp_scalability;

GDPP_API gdpp_status gdpp_scalability_check(size_t n, double q, uint64_t seed, int runs,
                                            gdpp_scalability* out);
GDPP_API gdpp_status gdpp_scalability_save(const gdpp_scalability* r, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* GDPP_H */
