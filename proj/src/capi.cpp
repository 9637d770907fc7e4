#include "jlprivacy.h"

#include <cstring>
#include <exception>
#include <map>
#include <new>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jlp/audit.hpp"
#include "jlp/baselines.hpp"
#include "jlp/bench.hpp"
#include "jlp/dp_covariance.hpp"
#include "jlp/dp_laplacian.hpp"
#include "jlp/errors.hpp"
#include "jlp/graph.hpp"
#include "jlp/io.hpp"
#include "jlp/rng.hpp"

struct jlp_graph {
  jlp::WeightedGraph g;
};
struct jlp_matrix {
  jlp::Matrix m;
};
struct jlp_laplacian_release {
  jlp::SanitizedLaplacian rel;
};
struct jlp_covariance_release {
  jlp::SanitizedCovariance rel;
};
struct jlp_rr_release {
  jlp::RrGraph rel;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
int guard(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return JLP_OK;
  } catch (const jlp::Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "allocation failed";
    return JLP_ERR_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return JLP_ERR_NUMERIC_FAILURE;
  }
}

void require(bool ok, const char* message) {
  if (!ok) jlp::fail(jlp::ErrorCode::bad_argument, message);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// One-line provenance string from a metadata map; the map's key order
// is already deterministic.
std::string provenance_line(
    const std::map<std::string, std::string>& meta) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, value] : meta) {
    if (!first) out << ' ';
    out << key << '=' << value;
    first = false;
  }
  return out.str();
}

jlp::CutQuery cut_from_span(const int* members, int count, int n) {
  require(members != nullptr && count > 0, "cut query: null or empty");
  return jlp::make_cut_query(
      std::vector<int>(members, members + count), n);
}

}  // namespace

extern "C" {

const char* jlp_last_error(void) { return g_last_error.c_str(); }

const char* jlp_generator_id(void) { return jlp::kGeneratorId; }

void jlp_string_free(char* s) { delete[] s; }

/* --- Graphs ---------------------------------------------------------- */

int jlp_graph_read(const char* path, jlp_graph** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "graph read: null argument");
    *out = new jlp_graph{jlp::read_edge_list(path)};
  });
}

int jlp_graph_random(int n, double p, uint64_t seed, jlp_graph** out) {
  return guard([&] {
    require(out != nullptr, "graph random: null output");
    *out = new jlp_graph{jlp::random_graph(n, p, seed)};
  });
}

int jlp_graph_write(const jlp_graph* g, const char* path,
                    const char* header_comment) {
  return guard([&] {
    require(g != nullptr && path != nullptr, "graph write: null argument");
    jlp::write_edge_list(path, g->g,
                         header_comment == nullptr ? "" : header_comment);
  });
}

int jlp_graph_node_count(const jlp_graph* g, int* out) {
  return guard([&] {
    require(g != nullptr && out != nullptr,
            "graph node count: null argument");
    *out = g->g.node_count();
  });
}

void jlp_graph_destroy(jlp_graph* g) { delete g; }

/* --- Sanitized Laplacian release ------------------------------------- */

int jlp_laplacian_params(double eps, double delta, double eta, double nu,
                         int n, int* r, double* w, double* epsilon0,
                         double* delta0) {
  return guard([&] {
    const jlp::LaplacianReleaseParams params =
        jlp::compute_params(eps, delta, eta, nu, n);
    if (r != nullptr) *r = params.r;
    if (w != nullptr) *w = params.w;
    if (epsilon0 != nullptr) *epsilon0 = params.epsilon0;
    if (delta0 != nullptr) *delta0 = params.delta0;
  });
}

int jlp_laplacian_release_create(const jlp_graph* g, double eps, double delta,
                                 double eta, double nu, uint64_t seed,
                                 size_t max_bytes,
                                 jlp_laplacian_release** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "release: null argument");
    const jlp::LaplacianReleaseParams params =
        jlp::compute_params(eps, delta, eta, nu, g->g.node_count());
    *out = new jlp_laplacian_release{
        jlp::release_laplacian(g->g, params, seed, max_bytes)};
  });
}

int jlp_laplacian_release_write(const jlp_laplacian_release* rel,
                                const char* matrix_path,
                                const char* meta_path) {
  return guard([&] {
    require(rel != nullptr && matrix_path != nullptr && meta_path != nullptr,
            "release write: null argument");
    const auto meta = jlp::release_metadata(rel->rel);
    const std::string provenance = provenance_line(meta);
    jlp::io::write_matrix_csv(matrix_path, rel->rel.l_tilde, provenance);
    jlp::io::write_key_values(meta_path, meta, provenance);
  });
}

int jlp_laplacian_release_read(const char* matrix_path, const char* meta_path,
                               jlp_laplacian_release** out) {
  return guard([&] {
    require(matrix_path != nullptr && meta_path != nullptr && out != nullptr,
            "release read: null argument");
    const jlp::Matrix l_tilde = jlp::io::read_matrix_csv(matrix_path);
    const auto meta = jlp::io::read_key_values(meta_path);
    *out = new jlp_laplacian_release{jlp::laplacian_from_parts(l_tilde, meta)};
  });
}

int jlp_laplacian_release_info(const jlp_laplacian_release* rel, int* n,
                               int* r, double* w) {
  return guard([&] {
    require(rel != nullptr, "release info: null handle");
    if (n != nullptr) *n = rel->rel.n;
    if (r != nullptr) *r = rel->rel.params.r;
    if (w != nullptr) *w = rel->rel.params.w;
  });
}

int jlp_cut_query(const jlp_laplacian_release* rel, const int* members,
                  int count, double* answer) {
  return guard([&] {
    require(rel != nullptr && answer != nullptr, "cut query: null argument");
    *answer = jlp::answer_cut_query(
        rel->rel, cut_from_span(members, count, rel->rel.n));
  });
}

int jlp_cut_query_tau(const jlp_laplacian_release* rel, int s, double* tau) {
  return guard([&] {
    require(rel != nullptr && tau != nullptr, "cut tau: null argument");
    *tau = jlp::cut_query_tau(rel->rel.params, s);
  });
}

void jlp_laplacian_release_destroy(jlp_laplacian_release* rel) { delete rel; }

/* --- Data matrices and sanitized covariance -------------------------- */

int jlp_matrix_read(const char* path, jlp_matrix** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "matrix read: null argument");
    *out = new jlp_matrix{jlp::io::read_matrix_csv(path)};
  });
}

int jlp_matrix_shape(const jlp_matrix* m, int* rows, int* cols) {
  return guard([&] {
    require(m != nullptr, "matrix shape: null handle");
    if (rows != nullptr) *rows = static_cast<int>(m->m.rows());
    if (cols != nullptr) *cols = static_cast<int>(m->m.cols());
  });
}

void jlp_matrix_destroy(jlp_matrix* m) { delete m; }

int jlp_covariance_params(double eps, double delta, double eta, double nu,
                          int* r, double* w, double* epsilon0,
                          double* delta0) {
  return guard([&] {
    const jlp::CovarianceReleaseParams params =
        jlp::compute_params_cov(eps, delta, eta, nu);
    if (r != nullptr) *r = params.r;
    if (w != nullptr) *w = params.w;
    if (epsilon0 != nullptr) *epsilon0 = params.epsilon0;
    if (delta0 != nullptr) *delta0 = params.delta0;
  });
}

int jlp_covariance_release_create(const jlp_matrix* data, double eps,
                                  double delta, double eta, double nu,
                                  uint64_t seed, size_t max_bytes,
                                  jlp_covariance_release** out) {
  return guard([&] {
    require(data != nullptr && out != nullptr, "release: null argument");
    const jlp::CovarianceReleaseParams params =
        jlp::compute_params_cov(eps, delta, eta, nu);
    *out = new jlp_covariance_release{
        jlp::release_covariance(data->m, params, seed, max_bytes)};
  });
}

int jlp_covariance_release_write(const jlp_covariance_release* rel,
                                 const char* matrix_path,
                                 const char* meta_path) {
  return guard([&] {
    require(rel != nullptr && matrix_path != nullptr && meta_path != nullptr,
            "release write: null argument");
    const auto meta = jlp::covariance_metadata(rel->rel);
    const std::string provenance = provenance_line(meta);
    jlp::io::write_matrix_csv(matrix_path, rel->rel.c_tilde, provenance);
    jlp::io::write_key_values(meta_path, meta, provenance);
  });
}

int jlp_covariance_release_read(const char* matrix_path,
                                const char* meta_path,
                                jlp_covariance_release** out) {
  return guard([&] {
    require(matrix_path != nullptr && meta_path != nullptr && out != nullptr,
            "release read: null argument");
    const jlp::Matrix c_tilde = jlp::io::read_matrix_csv(matrix_path);
    const auto meta = jlp::io::read_key_values(meta_path);
    *out = new jlp_covariance_release{
        jlp::covariance_from_parts(c_tilde, meta)};
  });
}

int jlp_covariance_release_info(const jlp_covariance_release* rel, int* n,
                                int* d, double* w) {
  return guard([&] {
    require(rel != nullptr, "release info: null handle");
    if (n != nullptr) *n = static_cast<int>(rel->rel.n);
    if (d != nullptr) *d = static_cast<int>(rel->rel.d);
    if (w != nullptr) *w = rel->rel.params.w;
  });
}

int jlp_direction_query(const jlp_covariance_release* rel, const double* x,
                        int d, double* answer) {
  return guard([&] {
    require(rel != nullptr && x != nullptr && answer != nullptr,
            "direction query: null argument");
    require(d == rel->rel.d, "direction query: dimension mismatch");
    *answer = jlp::answer_direction_query(
        rel->rel, Eigen::Map<const jlp::Vector>(x, d));
  });
}

int jlp_direction_query_tau(const jlp_covariance_release* rel, double* tau) {
  return guard([&] {
    require(rel != nullptr && tau != nullptr, "direction tau: null argument");
    *tau = jlp::direction_query_tau(rel->rel.params);
  });
}

void jlp_covariance_release_destroy(jlp_covariance_release* rel) {
  delete rel;
}

int jlp_mean_release_write(const jlp_matrix* data, double eps, double delta,
                           uint64_t seed, const char* path) {
  return guard([&] {
    require(data != nullptr && path != nullptr,
            "mean release: null argument");
    const jlp::Vector mean = jlp::release_mean(data->m, eps, delta, seed);
    std::map<std::string, std::string> meta;
    meta["eps"] = jlp::io::format_double(eps);
    meta["delta"] = jlp::io::format_double(delta);
    meta["n"] = std::to_string(data->m.rows());
    meta["d"] = std::to_string(data->m.cols());
    meta["seed"] = std::to_string(seed);
    meta["generator"] = jlp::kGeneratorId;
    jlp::io::write_matrix_csv(path, mean.transpose(),
                              provenance_line(meta));
  });
}

/* --- Baselines -------------------------------------------------------- */

int jlp_rr_release_create(const jlp_graph* g, double eps, uint64_t seed,
                          jlp_rr_release** out) {
  return guard([&] {
    require(g != nullptr && out != nullptr, "rr release: null argument");
    *out = new jlp_rr_release{
        jlp::randomized_response_release(g->g, eps, seed)};
  });
}

int jlp_rr_release_write(const jlp_rr_release* rel, const char* path,
                         int nonnegative, const char* header_comment) {
  return guard([&] {
    require(rel != nullptr && path != nullptr,
            "rr release write: null argument");
    const std::string header =
        header_comment == nullptr ? "" : header_comment;
    if (nonnegative != 0) {
      jlp::write_edge_list(path, jlp::rr_to_nonnegative(rel->rel), header);
    } else {
      jlp::write_rr_edge_list(path, rel->rel, header);
    }
  });
}

int jlp_rr_cut_estimate(const jlp_rr_release* rel, const int* members,
                        int count, double* answer) {
  return guard([&] {
    require(rel != nullptr && answer != nullptr,
            "rr cut estimate: null argument");
    *answer = jlp::rr_cut_estimate(rel->rel,
                                   cut_from_span(members, count, rel->rel.n));
  });
}

void jlp_rr_release_destroy(jlp_rr_release* rel) { delete rel; }

int jlp_laplace_cut_batch(const jlp_graph* g, const int* members,
                          const int* offsets, int query_count, double eps,
                          uint64_t seed, double* answers) {
  return guard([&] {
    require(g != nullptr && members != nullptr && offsets != nullptr &&
                answers != nullptr,
            "laplace batch: null argument");
    require(query_count > 0, "laplace batch: need at least one query");
    for (int qi = 0; qi < query_count; ++qi) {
      const int begin = offsets[qi];
      const int end = offsets[qi + 1];
      require(begin >= 0 && end > begin, "laplace batch: bad offsets");
      const jlp::CutQuery q =
          cut_from_span(members + begin, end - begin, g->g.node_count());
      answers[qi] = jlp::laplace_cut(
          g->g, q, eps, jlp::derive_seed(seed, static_cast<uint64_t>(qi)));
    }
  });
}

/* --- Privacy audits --------------------------------------------------- */

int jlp_audit_graph(double eps, double delta, double eta, double nu,
                    int desk_pairs, int desk_n, long trials, uint64_t seed,
                    int csv_format, char** report_out, int* all_passed) {
  return guard([&] {
    require(report_out != nullptr && all_passed != nullptr,
            "audit: null output");
    const jlp::AuditReport report = jlp::audit_graph_release(
        eps, delta, eta, nu, desk_pairs, desk_n, trials, seed);
    const std::string text =
        csv_format != 0 ? jlp::report_csv_header() + "\n" +
                              jlp::report_csv_row(report) + "\n"
                        : jlp::report_key_values(report);
    *report_out = dup_string(text);
    *all_passed = jlp::report_all_passed(report) ? 1 : 0;
  });
}

int jlp_audit_covariance(double eps, double delta, double eta, double nu,
                         int desk_pairs, int desk_rows, int desk_cols,
                         long trials, uint64_t seed, int csv_format,
                         char** report_out, int* all_passed) {
  return guard([&] {
    require(report_out != nullptr && all_passed != nullptr,
            "audit: null output");
    const jlp::AuditReport report = jlp::audit_covariance_release(
        eps, delta, eta, nu, desk_pairs, desk_rows, desk_cols, trials, seed);
    const std::string text =
        csv_format != 0 ? jlp::report_csv_header() + "\n" +
                              jlp::report_csv_row(report) + "\n"
                        : jlp::report_key_values(report);
    *report_out = dup_string(text);
    *all_passed = jlp::report_all_passed(report) ? 1 : 0;
  });
}

/* --- Univariate walkthrough ------------------------------------------ */

int jlp_univariate_demo(const int* bits, int n, double eps, double delta,
                        double eta, double nu, uint64_t seed,
                        double* estimate, double* true_count) {
  return guard([&] {
    require(bits != nullptr && n > 0 && estimate != nullptr,
            "univariate demo: null argument");
    const jlp::UnivariateDemoResult result = jlp::univariate_demo(
        std::vector<int>(bits, bits + n), eps, delta, eta, nu, seed);
    *estimate = result.estimate;
    if (true_count != nullptr) *true_count = result.true_count;
  });
}

/* --- Benchmark sweep --------------------------------------------------- */

int jlp_bench_sweep(int n, double p, double eps, double delta, double eta,
                    double nu, const int* cut_sizes, int n_sizes, int seeds,
                    int cuts_per_size, uint64_t master_seed,
                    size_t max_bytes, char** csv_out) {
  return guard([&] {
    require(cut_sizes != nullptr && n_sizes > 0 && csv_out != nullptr,
            "bench: null argument");
    jlp::BenchConfig config;
    config.n = n;
    config.p = p;
    config.eps = eps;
    config.delta = delta;
    config.eta = eta;
    config.nu = nu;
    config.cut_sizes.assign(cut_sizes, cut_sizes + n_sizes);
    config.seeds = seeds;
    config.cuts_per_size = cuts_per_size;
    config.master_seed = master_seed;
    config.max_bytes = max_bytes;
    *csv_out = dup_string(jlp::bench_csv(jlp::bench_sweep(config)));
  });
}

} /* extern "C" */
