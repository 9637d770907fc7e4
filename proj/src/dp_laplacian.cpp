#include "jlp/dp_laplacian.hpp"

#include <cmath>
#include <cstdlib>

#include "jlp/errors.hpp"
#include "jlp/io.hpp"
#include "jlp/jl.hpp"
#include "jlp/rng.hpp"

namespace jlp {

namespace {

void check_common_ranges(double eps, double delta, double eta, double nu) {
  if (!(eps > 0.0)) {
    fail(ErrorCode::parameter_range, "eps must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::parameter_range, "delta must be in (0,1)");
  }
  if (!(eta > 0.0 && eta <= 0.5)) {
    fail(ErrorCode::parameter_range, "eta must be in (0, 1/2]");
  }
  if (!(nu > 0.0 && nu < 1.0)) {
    fail(ErrorCode::parameter_range, "nu must be in (0,1)");
  }
}

int sketch_rows(double eta, double nu) {
  const int r = static_cast<int>(std::ceil(8.0 * std::log(2.0 / nu) /
                                           (eta * eta)));
  return r < 1 ? 1 : r;
}

}  // namespace

int min_node_count(double w) {
  return static_cast<int>(std::floor(2.0 * w)) + 1;
}

LaplacianReleaseParams compute_params(double eps, double delta, double eta,
                                      double nu, int n) {
  check_common_ranges(eps, delta, eta, nu);
  if (n < 2) {
    fail(ErrorCode::parameter_range, "need at least 2 nodes");
  }
  LaplacianReleaseParams params;
  params.eps = eps;
  params.delta = delta;
  params.eta = eta;
  params.nu = nu;
  params.r = sketch_rows(eta, nu);
  const double r = static_cast<double>(params.r);
  params.w = std::sqrt(32.0 * r * std::log(2.0 / delta)) / eps *
             std::log(4.0 * r / delta);
  params.epsilon0 = eps / std::sqrt(4.0 * r * std::log(2.0 / delta));
  params.delta0 = delta / (2.0 * r);
  if (!(params.w > 2.0)) {
    fail(ErrorCode::parameter_range,
         "parameters too weak: w = " + io::format_double(params.w) +
             " must exceed 2; decrease eps or delta");
  }
  if (params.w / n >= 0.5) {
    fail(ErrorCode::parameter_range,
         "graph too small: w/n = " + io::format_double(params.w / n) +
             " >= 1/2; need at least n = " +
             std::to_string(min_node_count(params.w)) + " nodes");
  }
  return params;
}

namespace {

void check_release_budget(int n, int r, size_t max_bytes) {
  const size_t pairs = static_cast<size_t>(n) * (n - 1) / 2;
  const size_t bytes =
      (pairs * (static_cast<size_t>(n) + static_cast<size_t>(r)) +
       static_cast<size_t>(r) * static_cast<size_t>(n)) *
      sizeof(double);
  if (bytes > max_bytes) {
    fail(ErrorCode::budget_exceeded,
         "release: " + std::to_string(bytes) +
             " bytes of working memory exceeds budget of " +
             std::to_string(max_bytes));
  }
}

}  // namespace

LaplacianReleaseDebug release_laplacian_with_projection(
    const WeightedGraph& g, const LaplacianReleaseParams& params,
    uint64_t seed, size_t max_bytes) {
  const int n = g.node_count();
  if (n < 2) {
    fail(ErrorCode::bad_argument, "release: need at least 2 nodes");
  }
  if (params.w / n >= 0.5) {
    fail(ErrorCode::parameter_range,
         "release: w/n >= 1/2; need at least n = " +
             std::to_string(min_node_count(params.w)) + " nodes");
  }
  check_release_budget(n, params.r, max_bytes);

  const WeightedGraph h = translate_weights(g, params.w / n);
  const Matrix e = edge_matrix(h);
  const GaussianSketch sketch =
      sample_sketch(params.r, e.rows(), seed, max_bytes);

  LaplacianReleaseDebug out;
  out.projected = sketch.entries * e;  // r x n
  Matrix l_tilde = Matrix::Zero(n, n);
  l_tilde.selfadjointView<Eigen::Lower>().rankUpdate(
      out.projected.transpose(), 1.0 / params.r);
  out.release.l_tilde = l_tilde.selfadjointView<Eigen::Lower>();
  out.release.n = n;
  out.release.params = params;
  out.release.seed = seed;
  return out;
}

SanitizedLaplacian release_laplacian(const WeightedGraph& g,
                                     const LaplacianReleaseParams& params,
                                     uint64_t seed, size_t max_bytes) {
  return release_laplacian_with_projection(g, params, seed, max_bytes)
      .release;
}

double answer_cut_query(const SanitizedLaplacian& sl, const CutQuery& q) {
  const int n = sl.n;
  Vector side = indicator(q, n);
  double s = side.sum();
  if (!(s > 0.0 && s < n)) {
    fail(ErrorCode::bad_argument,
         "cut query: member set must be a proper nonempty subset");
  }
  // Evaluate on the representative side containing node 0 so S and its
  // complement produce bit-identical answers.
  if (side[0] == 0.0) {
    side = Vector::Ones(n) - side;
    s = static_cast<double>(n) - s;
  }
  const double quad = side.dot(sl.l_tilde * side);
  const double w = sl.params.w;
  return (quad - w * s * (n - s) / n) / (1.0 - w / n);
}

double cut_query_tau(const LaplacianReleaseParams& params, int s) {
  return 2.0 * params.eta * params.w * s;
}

DistributedRow distributed_release_row(const WeightedGraph& g,
                                       const LaplacianReleaseParams& params,
                                       uint64_t seed) {
  const int n = g.node_count();
  if (n < 2) {
    fail(ErrorCode::bad_argument, "release: need at least 2 nodes");
  }
  if (params.w / n >= 0.5) {
    fail(ErrorCode::parameter_range,
         "release: w/n >= 1/2; need at least n = " +
             std::to_string(min_node_count(params.w)) + " nodes");
  }
  const WeightedGraph h = translate_weights(g, params.w / n);

  DistributedRow row;
  row.node_outputs = Vector::Zero(n);
  row.samples_drawn.assign(static_cast<size_t>(n), 0);
  NormalSampler sampler(seed);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double x = sampler.next();
      ++row.samples_drawn[static_cast<size_t>(i)];
      const double root = std::sqrt(h.weight(i, j));
      row.node_outputs[i] += x * root;
      row.node_outputs[j] -= x * root;
    }
  }
  return row;
}

std::map<std::string, std::string> release_metadata(
    const SanitizedLaplacian& sl) {
  std::map<std::string, std::string> meta;
  meta["eps"] = io::format_double(sl.params.eps);
  meta["delta"] = io::format_double(sl.params.delta);
  meta["eta"] = io::format_double(sl.params.eta);
  meta["nu"] = io::format_double(sl.params.nu);
  meta["r"] = std::to_string(sl.params.r);
  meta["w"] = io::format_double(sl.params.w);
  meta["n"] = std::to_string(sl.n);
  meta["seed"] = std::to_string(sl.seed);
  meta["generator"] = kGeneratorId;
  return meta;
}

namespace {

double meta_double(const std::map<std::string, std::string>& meta,
                   const std::string& key) {
  const auto it = meta.find(key);
  if (it == meta.end()) {
    fail(ErrorCode::ingestion, "release metadata: missing key '" + key + "'");
  }
  char* end = nullptr;
  const double value = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0') {
    fail(ErrorCode::ingestion,
         "release metadata: bad numeric value for '" + key + "'");
  }
  return value;
}

uint64_t meta_u64(const std::map<std::string, std::string>& meta,
                  const std::string& key) {
  const auto it = meta.find(key);
  if (it == meta.end()) {
    fail(ErrorCode::ingestion, "release metadata: missing key '" + key + "'");
  }
  char* end = nullptr;
  const uint64_t value = std::strtoull(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0') {
    fail(ErrorCode::ingestion,
         "release metadata: bad integer value for '" + key + "'");
  }
  return value;
}

}  // namespace

SanitizedLaplacian laplacian_from_parts(
    const Matrix& l_tilde, const std::map<std::string, std::string>& meta) {
  if (l_tilde.rows() != l_tilde.cols()) {
    fail(ErrorCode::ingestion, "sanitized Laplacian must be square");
  }
  const int n = static_cast<int>(meta_u64(meta, "n"));
  if (l_tilde.rows() != n) {
    fail(ErrorCode::ingestion,
         "sanitized Laplacian size does not match metadata n");
  }
  SanitizedLaplacian sl;
  sl.l_tilde = l_tilde;
  sl.n = n;
  sl.seed = meta_u64(meta, "seed");
  sl.params = compute_params(meta_double(meta, "eps"),
                             meta_double(meta, "delta"),
                             meta_double(meta, "eta"),
                             meta_double(meta, "nu"), n);
  // Guard against edited metadata: the derived values must round-trip.
  const int meta_r = static_cast<int>(meta_u64(meta, "r"));
  const double meta_w = meta_double(meta, "w");
  if (meta_r != sl.params.r ||
      std::abs(meta_w - sl.params.w) > 1e-9 * sl.params.w) {
    fail(ErrorCode::ingestion,
         "release metadata: r/w inconsistent with eps, delta, eta, nu");
  }
  return sl;
}

}  // namespace jlp
