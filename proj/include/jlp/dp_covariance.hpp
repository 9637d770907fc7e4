#ifndef JLP_DP_COVARIANCE_HPP
#define JLP_DP_COVARIANCE_HPP

#include <cstdint>
#include <map>
#include <string>

#include "jlp/linalg.hpp"

namespace jlp {

// Parameters of the sanitized-covariance release. Same r and derived
// per-row budget as the Laplacian release, but with
// w = 16·sqrt(r·ln(2/delta))/eps · ln(16r/delta).
struct CovarianceReleaseParams {
  double eps = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double nu = 0.0;
  int r = 0;
  double w = 0.0;
  double epsilon0 = 0.0;
  double delta0 = 0.0;
};

// Requires eps > 0, delta in (0,1), eta in (0, 1/2], nu in (0,1),
// and the resulting w > 2.
CovarianceReleaseParams compute_params_cov(double eps, double delta,
                                           double eta, double nu);

// Validates an n x d data matrix: n >= d >= 1, all entries finite.
void check_data_matrix(const Matrix& a);

// Subtracts each column's mean from the column: a - (1/n)·1·1^T·a.
Matrix center_rows(const Matrix& a);

// Lifts every singular value sigma_i to sqrt(sigma_i^2 + w^2) while
// keeping the singular vectors, so that B^T B = A^T A + w^2 I.
// Requires n >= d and w >= 0.
Matrix spectral_shift(const Matrix& a, double w);

// Published sanitized covariance: c_tilde = (1/r)·B^T M^T M B where
// B = spectral_shift(center_rows(a), w) and M is the seeded sketch.
struct SanitizedCovariance {
  Matrix c_tilde;
  Eigen::Index d = 0;
  Eigen::Index n = 0;
  CovarianceReleaseParams params;
  uint64_t seed = 0;
};

SanitizedCovariance release_covariance(const Matrix& a,
                                       const CovarianceReleaseParams& params,
                                       uint64_t seed,
                                       size_t max_bytes = size_t{1} << 30);

// Directional-variance estimate from published data only:
//   R(x) = x^T c_tilde x - w^2.
// x must be unit length within 1e-8; it is never silently normalized.
double answer_direction_query(const SanitizedCovariance& sc, const Vector& x);

// Additive error bound reported alongside answers: tau = eta·w^2.
double direction_query_tau(const CovarianceReleaseParams& params);

// Noisy mean release: (1/n)·a^T·1 plus iid N(0, 4·ln(1/delta)/(n·eps)^2)
// per coordinate. Deterministic in seed.
Vector release_mean(const Matrix& a, double eps, double delta, uint64_t seed);

// Release metadata: eps, delta, eta, nu, r, w, n, d, seed, generator.
std::map<std::string, std::string> covariance_metadata(
    const SanitizedCovariance& sc);
SanitizedCovariance covariance_from_parts(
    const Matrix& c_tilde, const std::map<std::string, std::string>& meta);

}  // namespace jlp

#endif  // JLP_DP_COVARIANCE_HPP
