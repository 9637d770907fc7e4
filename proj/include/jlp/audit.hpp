#ifndef JLP_AUDIT_HPP
#define JLP_AUDIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jlp/dp_covariance.hpp"
#include "jlp/dp_laplacian.hpp"
#include "jlp/graph.hpp"
#include "jlp/linalg.hpp"

namespace jlp {

// Mean-zero multivariate normal supported on the column space of its
// (possibly rank-deficient) covariance.
class DegenerateGaussian {
 public:
  static DegenerateGaussian from_covariance(const Matrix& sigma);

  // -1/2·(rank·ln(2pi) + ln(pseudo-det) + x^T sigma^dag x). Errors if x
  // is outside the support by more than 1e-6·|x| — never silently
  // projects.
  double log_pdf(const Vector& x) const;

  Eigen::Index rank() const { return rank_; }
  double log_pseudo_det() const { return log_pseudo_det_; }
  const Matrix& pseudo_inverse() const { return pseudo_inverse_; }
  // Orthonormal columns spanning the support (kernel complement).
  const Matrix& support_basis() const { return support_basis_; }

 private:
  DegenerateGaussian() = default;

  Eigen::Index rank_ = 0;
  double log_pseudo_det_ = 0.0;
  Matrix pseudo_inverse_;
  Matrix support_basis_;
};

// One numerically checked inequality: pass/fail plus the worst margin
// observed (positive margin = slack remaining, negative = violation).
struct FactResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;
};

// Everything the audit produces for one parameter point.
struct AuditReport {
  double epsilon0 = 0.0;
  double delta0 = 0.0;
  // For covariance audits: sqrt(det(B'^T B')/det(B^T B)). For graph
  // audits: the worst observed sqrt-pseudo-det ratio relative to its
  // e^{1/w} bound (<= 1 means every pair passed).
  double det_ratio = 0.0;
  bool upper_bound_ok = false;
  double empirical_delta = 0.0;
  long trials = 0;
  std::vector<FactResult> spectral_facts;
};

std::string report_key_values(const AuditReport& report);
std::string report_csv_header();
std::string report_csv_row(const AuditReport& report);
bool report_all_passed(const AuditReport& report);

// --- Graph-side privacy checks -------------------------------------

// Scalar reduction of a translated neighbor pair. The Laplacians
// differ by gamma·e_ab·e_ab^T, so
//   pdet(L_G')/pdet(L_G) = 1 + gamma·q with q = e_ab^T L_G^dag e_ab,
// and the log-density ratio at x depends on x only through
// t1 = e_ab^T L_G^dag x.
struct PairStatistics {
  double gamma = 0.0;
  double q = 0.0;
  double log_det_ratio = 0.0;  // ln(1 + gamma·q)
};
PairStatistics pair_statistics(const NeighborPair& pair);

// ln PDF_G(x) - ln PDF_G'(x) = (1/2)·ln(1+gamma·q)
//                              - (1/2)·gamma·t1^2/(1+gamma·q).
double log_pdf_ratio(const PairStatistics& stats, double t1);

// Deterministic privacy upper bound: for every x the density ratio is
// at most sqrt(pdet(L_G')/pdet(L_G)), which must be <= e^{1/w} for
// w = pair.w_over_n·n. Requires a translated pair with both kernels of
// dimension exactly 1.
struct UpperBoundResult {
  double det_ratio = 0.0;
  double bound = 0.0;
  double epsilon0 = 0.0;
  bool ok = false;
};
UpperBoundResult pdf_ratio_upper_check(const NeighborPair& pair,
                                       const LaplacianReleaseParams& params);

enum class SampleSide { from_g, from_g_prime };

// Monte-Carlo check of the probabilistic lower bound: the fraction of
// samples x (drawn from the chosen side) with
// PDF_G(x) < e^{-epsilon0}·PDF_G'(x). Trials use per-trial derived
// seeds. For n <= 64 each trial draws the full C(n,2)-dimensional y
// and evaluates both densities; larger n uses the exact scalar
// reduction above (identical in distribution). Requires trials >= 10^4.
double pdf_ratio_lower_mc(const NeighborPair& pair,
                          const LaplacianReleaseParams& params, long trials,
                          uint64_t seed,
                          SampleSide side = SampleSide::from_g);

// Scalar-reduction variant for precomputed pair statistics (used when
// the same pair feeds several runs, and by distribution-level tests).
// t1 ~ N(0, q) from G, N(0, q·(1+gamma·q)) from G'. Any trials >= 1.
double pdf_ratio_lower_mc(const PairStatistics& stats, double epsilon0,
                          long trials, uint64_t seed, SampleSide side);

// Binomial pass threshold for an empirical delta estimate.
double mc_pass_threshold(double delta0, long trials);

// The spectral inequalities behind the graph privacy proof, evaluated
// on one translated pair: eigenvalue domination, trace gap <= 2,
// pseudo-inverse ordering on sampled directions, kernel floor
// lambda_2 >= w, and the cross term e_ab^T L_G'^dag e_ab <= 2/w.
std::vector<FactResult> spectral_facts_check(
    const NeighborPair& pair, uint64_t seed = 0x5EEDF4C757ull);

// --- Matrix-side privacy checks ------------------------------------

// Neighboring data matrices: a_prime = a except one row, raised by a
// uniformly random direction scaled by a uniform radius in [0,1).
struct MatrixNeighborPair {
  Matrix a;
  Matrix a_prime;
  Eigen::Index row = 0;
  Vector v;
};
MatrixNeighborPair random_matrix_neighbor_pair(Eigen::Index n,
                                               Eigen::Index d,
                                               uint64_t seed);

// Majorization bound on the singular-value drift of a rank-1 row
// perturbation: with Big = {i: lambda_i > sigma_i}, both directed gap
// sums must be <= 1. Inputs must differ on exactly one row by a vector
// of norm <= 1.
struct LindskiiResult {
  double big_sum = 0.0;
  double small_sum = 0.0;
  bool ok = false;
};
LindskiiResult lindskii_check(const Matrix& a, const Matrix& a_prime);

// Full audit of one neighboring matrix pair: deterministic two-sided
// determinant bound e^{±epsilon0/2} on the shifted pair, Monte-Carlo
// check of the two-sided density event from both sides, plus the
// supporting facts (Lindskii sums, rank-1 singular values, Gram-gap
// identity, norm comparability).
AuditReport covariance_ratio_audit(const Matrix& a, const Matrix& a_prime,
                                   const CovarianceReleaseParams& params,
                                   long trials, uint64_t seed);

// --- Aggregate drivers (one parameter point each) -------------------

// Sweeps desk_pairs random translated pairs at desk_n nodes through the
// deterministic upper bound and the spectral facts, then runs the
// Monte-Carlo lower bound on the extreme pair at the smallest node
// count the parameters allow.
AuditReport audit_graph_release(double eps, double delta, double eta,
                                double nu, int desk_pairs, int desk_n,
                                long trials, uint64_t seed);

// Sweeps desk_pairs random neighboring matrices (desk_rows x desk_cols)
// through the determinant bound and supporting facts, with the
// Monte-Carlo density event on the first pair.
AuditReport audit_covariance_release(double eps, double delta, double eta,
                                     double nu, int desk_pairs,
                                     Eigen::Index desk_rows,
                                     Eigen::Index desk_cols, long trials,
                                     uint64_t seed);

// --- Univariate walkthrough -----------------------------------------

// Counts the ones in a bit vector through the full pipeline: translate
// the bits into a {sqrt(w/n), 1} vector, sketch it r times, estimate
// the squared norm, and invert the affine translation.
struct UnivariateDemoResult {
  double estimate = 0.0;
  double true_count = 0.0;
  LaplacianReleaseParams params;
};
UnivariateDemoResult univariate_demo(const std::vector<int>& bits,
                                     double eps, double delta, double eta,
                                     double nu, uint64_t seed);

// The exact inversion step: count = (norm_estimate - w)/(1 - w/n).
double invert_norm_estimate(double norm_estimate, int n, double w);

}  // namespace jlp

#endif  // JLP_AUDIT_HPP
