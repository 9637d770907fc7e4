/* jlprivacy — C API for differentially private graph and covariance
 * releases built on Johnson-Lindenstrauss sketches.
 *
 * Conventions:
 *   - Every fallible call returns JLP_OK (0) or one of the JLP_ERR_*
 *     codes below; a human-readable message for the most recent failure
 *     on the calling thread is available via jlp_last_error().
 *   - Objects are opaque handles created into an out-parameter and
 *     released with the matching *_destroy call. Out-parameters are
 *     untouched on failure.
 *   - Strings returned through char** out-parameters are heap copies;
 *     free them with jlp_string_free.
 *   - All randomness is an explicit uint64 seed; the same inputs and
 *     seed reproduce byte-identical results on every platform.
 */
#ifndef JLPRIVACY_H
#define JLPRIVACY_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  JLP_OK = 0,
  JLP_ERR_CHECK_FAILED = 1,    /* an audit or verification check failed */
  JLP_ERR_BAD_ARGUMENT = 2,    /* malformed arguments or null handles */
  JLP_ERR_INGESTION = 3,       /* unreadable or malformed input files */
  JLP_ERR_PARAMETER_RANGE = 4, /* privacy parameters out of range */
  JLP_ERR_BUDGET_EXCEEDED = 5, /* allocation budget exceeded */
  JLP_ERR_NUMERIC_FAILURE = 6  /* numerical routine did not converge */
};

/* Message for the most recent failure on this thread ("" after a
 * success). The pointer stays valid until the next API call on the
 * same thread. */
const char* jlp_last_error(void);

/* Identifier of the pseudorandom pipeline, recorded in all release
 * metadata. */
const char* jlp_generator_id(void);

void jlp_string_free(char* s);

/* --- Graphs ---------------------------------------------------------- */

typedef struct jlp_graph jlp_graph;

/* Reads the edge-list format: a "n <node_count>" header line followed
 * by "u v weight" lines with u < v and weight in [0, 1]. */
int jlp_graph_read(const char* path, jlp_graph** out);
int jlp_graph_random(int n, double p, uint64_t seed, jlp_graph** out);
int jlp_graph_write(const jlp_graph* g, const char* path,
                    const char* header_comment);
int jlp_graph_node_count(const jlp_graph* g, int* out);
void jlp_graph_destroy(jlp_graph* g);

/* --- Sanitized Laplacian release ------------------------------------- */

typedef struct jlp_laplacian_release jlp_laplacian_release;

/* Derived release parameters for (eps, delta, eta, nu) at node count n.
 * Any output pointer may be NULL. */
int jlp_laplacian_params(double eps, double delta, double eta, double nu,
                         int n, int* r, double* w, double* epsilon0,
                         double* delta0);

int jlp_laplacian_release_create(const jlp_graph* g, double eps, double delta,
                                 double eta, double nu, uint64_t seed,
                                 size_t max_bytes,
                                 jlp_laplacian_release** out);

/* Writes the released matrix (CSV) and its metadata (key=value); both
 * files start with a provenance comment carrying all parameters and the
 * seed. jlp_laplacian_release_read rebuilds the handle from the two
 * files and re-derives the parameters, rejecting tampered metadata. */
int jlp_laplacian_release_write(const jlp_laplacian_release* rel,
                                const char* matrix_path,
                                const char* meta_path);
int jlp_laplacian_release_read(const char* matrix_path, const char* meta_path,
                               jlp_laplacian_release** out);

int jlp_laplacian_release_info(const jlp_laplacian_release* rel, int* n,
                               int* r, double* w);

/* Cut-query estimate for the node set members[0..count). */
int jlp_cut_query(const jlp_laplacian_release* rel, const int* members,
                  int count, double* answer);

/* Additive error bound tau = 2·eta·w·s for cuts of size s. */
int jlp_cut_query_tau(const jlp_laplacian_release* rel, int s, double* tau);

void jlp_laplacian_release_destroy(jlp_laplacian_release* rel);

/* --- Data matrices and sanitized covariance -------------------------- */

typedef struct jlp_matrix jlp_matrix;

/* Reads a CSV matrix ('#' comment lines skipped). */
int jlp_matrix_read(const char* path, jlp_matrix** out);
int jlp_matrix_shape(const jlp_matrix* m, int* rows, int* cols);
void jlp_matrix_destroy(jlp_matrix* m);

typedef struct jlp_covariance_release jlp_covariance_release;

int jlp_covariance_params(double eps, double delta, double eta, double nu,
                          int* r, double* w, double* epsilon0,
                          double* delta0);

int jlp_covariance_release_create(const jlp_matrix* data, double eps,
                                  double delta, double eta, double nu,
                                  uint64_t seed, size_t max_bytes,
                                  jlp_covariance_release** out);
int jlp_covariance_release_write(const jlp_covariance_release* rel,
                                 const char* matrix_path,
                                 const char* meta_path);
int jlp_covariance_release_read(const char* matrix_path,
                                const char* meta_path,
                                jlp_covariance_release** out);
int jlp_covariance_release_info(const jlp_covariance_release* rel, int* n,
                                int* d, double* w);

/* Directional-variance estimate for a unit vector x[0..d). */
int jlp_direction_query(const jlp_covariance_release* rel, const double* x,
                        int d, double* answer);
int jlp_direction_query_tau(const jlp_covariance_release* rel, double* tau);

void jlp_covariance_release_destroy(jlp_covariance_release* rel);

/* Writes the noisy mean of the rows of `data` as a one-row CSV with a
 * provenance comment. */
int jlp_mean_release_write(const jlp_matrix* data, double eps, double delta,
                           uint64_t seed, const char* path);

/* --- Baselines -------------------------------------------------------- */

typedef struct jlp_rr_release jlp_rr_release;

/* Randomized response over all node pairs; requires 0 < eps <= 1. */
int jlp_rr_release_create(const jlp_graph* g, double eps, uint64_t seed,
                          jlp_rr_release** out);
/* nonnegative != 0 maps the released signs {-1,+1} to weights {0,1}. */
int jlp_rr_release_write(const jlp_rr_release* rel, const char* path,
                         int nonnegative, const char* header_comment);
int jlp_rr_cut_estimate(const jlp_rr_release* rel, const int* members,
                        int count, double* answer);
void jlp_rr_release_destroy(jlp_rr_release* rel);

/* True cut values plus Laplace(1/eps) noise, one query per
 * offsets[i]..offsets[i+1] slice of members (offsets has query_count+1
 * entries). Each query uses an independent seed derived from `seed`. */
int jlp_laplace_cut_batch(const jlp_graph* g, const int* members,
                          const int* offsets, int query_count, double eps,
                          uint64_t seed, double* answers);

/* --- Privacy audits ---------------------------------------------------
 *
 * Both audits return the report as text (key=value lines, or a CSV
 * header plus one row when csv_format != 0) and set *all_passed to 1
 * iff every deterministic bound, spectral fact, and Monte-Carlo
 * threshold held. The call itself returns JLP_OK even when checks
 * fail; callers decide how to surface failures. */

int jlp_audit_graph(double eps, double delta, double eta, double nu,
                    int desk_pairs, int desk_n, long trials, uint64_t seed,
                    int csv_format, char** report_out, int* all_passed);

int jlp_audit_covariance(double eps, double delta, double eta, double nu,
                         int desk_pairs, int desk_rows, int desk_cols,
                         long trials, uint64_t seed, int csv_format,
                         char** report_out, int* all_passed);

/* --- Univariate walkthrough ------------------------------------------ */

/* Private count of ones in bits[0..n) through the full sketch pipeline. */
int jlp_univariate_demo(const int* bits, int n, double eps, double delta,
                        double eta, double nu, uint64_t seed,
                        double* estimate, double* true_count);

/* --- Benchmark sweep --------------------------------------------------- */

/* Compares the JL release against randomized response, Laplace noise,
 * and the expected-cut guess on one G(n, p) graph at matched
 * (eps, delta). Returns the fixed-column CSV described in the docs. */
int jlp_bench_sweep(int n, double p, double eps, double delta, double eta,
                    double nu, const int* cut_sizes, int n_sizes, int seeds,
                    int cuts_per_size, uint64_t master_seed,
                    size_t max_bytes, char** csv_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* JLPRIVACY_H */
