#include "jlp/dp_covariance.hpp"

#include <cmath>
#include <cstdlib>

#include "jlp/errors.hpp"
#include "jlp/io.hpp"
#include "jlp/jl.hpp"
#include "jlp/rng.hpp"

namespace jlp {

namespace {

void check_ranges(double eps, double delta, double eta, double nu) {
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

}  // namespace

CovarianceReleaseParams compute_params_cov(double eps, double delta,
                                           double eta, double nu) {
  check_ranges(eps, delta, eta, nu);
  CovarianceReleaseParams params;
  params.eps = eps;
  params.delta = delta;
  params.eta = eta;
  params.nu = nu;
  const double raw_r = 8.0 * std::log(2.0 / nu) / (eta * eta);
  params.r = static_cast<int>(std::ceil(raw_r));
  if (params.r < 1) params.r = 1;
  const double r = static_cast<double>(params.r);
  params.w = 16.0 * std::sqrt(r * std::log(2.0 / delta)) / eps *
             std::log(16.0 * r / delta);
  params.epsilon0 = eps / std::sqrt(4.0 * r * std::log(2.0 / delta));
  params.delta0 = delta / (2.0 * r);
  if (!(params.w > 2.0)) {
    fail(ErrorCode::parameter_range,
         "parameters too weak: w = " + io::format_double(params.w) +
             " must exceed 2; decrease eps or delta");
  }
  return params;
}

void check_data_matrix(const Matrix& a) {
  if (a.rows() < 1 || a.cols() < 1) {
    fail(ErrorCode::bad_argument, "data matrix must be non-empty");
  }
  if (a.rows() < a.cols()) {
    fail(ErrorCode::bad_argument,
         "data matrix needs rows >= columns (got " +
             std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
             "); fewer individuals than attributes is unsupported");
  }
  if (!a.allFinite()) {
    fail(ErrorCode::bad_argument, "data matrix has non-finite entries");
  }
}

Matrix center_rows(const Matrix& a) {
  check_data_matrix(a);
  return a.rowwise() - a.colwise().mean();
}

Matrix spectral_shift(const Matrix& a, double w) {
  check_data_matrix(a);
  if (!(w >= 0.0)) {
    fail(ErrorCode::bad_argument, "spectral shift requires w >= 0");
  }
  const linalg::SvdFactors factors = linalg::svd(a);
  Vector lifted(factors.singular_values.size());
  for (Eigen::Index i = 0; i < lifted.size(); ++i) {
    const double s = factors.singular_values[i];
    lifted[i] = std::sqrt(s * s + w * w);
  }
  return factors.u * lifted.asDiagonal() * factors.v.transpose();
}

SanitizedCovariance release_covariance(const Matrix& a,
                                       const CovarianceReleaseParams& params,
                                       uint64_t seed, size_t max_bytes) {
  check_data_matrix(a);
  const Eigen::Index n = a.rows();
  const Eigen::Index d = a.cols();
  const Matrix b = spectral_shift(center_rows(a), params.w);
  const GaussianSketch sketch = sample_sketch(params.r, n, seed, max_bytes);
  const Matrix projected = sketch.entries * b;  // r x d

  Matrix c_tilde = Matrix::Zero(d, d);
  c_tilde.selfadjointView<Eigen::Lower>().rankUpdate(projected.transpose(),
                                                     1.0 / params.r);
  SanitizedCovariance sc;
  sc.c_tilde = c_tilde.selfadjointView<Eigen::Lower>();
  sc.d = d;
  sc.n = n;
  sc.params = params;
  sc.seed = seed;
  return sc;
}

double answer_direction_query(const SanitizedCovariance& sc,
                              const Vector& x) {
  if (x.size() != sc.d) {
    fail(ErrorCode::bad_argument,
         "direction query: length " + std::to_string(x.size()) +
             " does not match dimension " + std::to_string(sc.d));
  }
  if (std::abs(x.norm() - 1.0) > 1e-8) {
    fail(ErrorCode::bad_argument,
         "direction query: vector must be unit length (norm = " +
             io::format_double(x.norm()) + ")");
  }
  const double w = sc.params.w;
  return x.dot(sc.c_tilde * x) - w * w;
}

double direction_query_tau(const CovarianceReleaseParams& params) {
  return params.eta * params.w * params.w;
}

Vector release_mean(const Matrix& a, double eps, double delta,
                    uint64_t seed) {
  check_data_matrix(a);
  if (!(eps > 0.0)) {
    fail(ErrorCode::parameter_range, "eps must be > 0");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::parameter_range, "delta must be in (0,1)");
  }
  const double n = static_cast<double>(a.rows());
  const double sigma = std::sqrt(4.0 * std::log(1.0 / delta)) / (n * eps);
  Vector mean = a.colwise().mean();
  NormalSampler sampler(seed);
  for (Eigen::Index i = 0; i < mean.size(); ++i) {
    mean[i] += sigma * sampler.next();
  }
  return mean;
}

std::map<std::string, std::string> covariance_metadata(
    const SanitizedCovariance& sc) {
  std::map<std::string, std::string> meta;
  meta["eps"] = io::format_double(sc.params.eps);
  meta["delta"] = io::format_double(sc.params.delta);
  meta["eta"] = io::format_double(sc.params.eta);
  meta["nu"] = io::format_double(sc.params.nu);
  meta["r"] = std::to_string(sc.params.r);
  meta["w"] = io::format_double(sc.params.w);
  meta["n"] = std::to_string(sc.n);
  meta["d"] = std::to_string(sc.d);
  meta["seed"] = std::to_string(sc.seed);
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

SanitizedCovariance covariance_from_parts(
    const Matrix& c_tilde, const std::map<std::string, std::string>& meta) {
  if (c_tilde.rows() != c_tilde.cols()) {
    fail(ErrorCode::ingestion, "sanitized covariance must be square");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(meta_u64(meta, "d"));
  if (c_tilde.rows() != d) {
    fail(ErrorCode::ingestion,
         "sanitized covariance size does not match metadata d");
  }
  SanitizedCovariance sc;
  sc.c_tilde = c_tilde;
  sc.d = d;
  sc.n = static_cast<Eigen::Index>(meta_u64(meta, "n"));
  sc.seed = meta_u64(meta, "seed");
  sc.params = compute_params_cov(meta_double(meta, "eps"),
                                 meta_double(meta, "delta"),
                                 meta_double(meta, "eta"),
                                 meta_double(meta, "nu"));
  const int meta_r = static_cast<int>(meta_u64(meta, "r"));
  const double meta_w = meta_double(meta, "w");
  if (meta_r != sc.params.r ||
      std::abs(meta_w - sc.params.w) > 1e-9 * sc.params.w) {
    fail(ErrorCode::ingestion,
         "release metadata: r/w inconsistent with eps, delta, eta, nu");
  }
  return sc;
}

}  // namespace jlp
