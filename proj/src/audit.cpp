#include "jlp/audit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "jlp/errors.hpp"
#include "jlp/io.hpp"
#include "jlp/jl.hpp"
#include "jlp/rng.hpp"

namespace jlp {

namespace {

constexpr double kFactTolerance = 1e-8;
constexpr double kLnTwoPi = 1.8378770664093453;

struct SymmetricEigen {
  Vector eigenvalues;  // ascending
  Matrix q;
};

SymmetricEigen decompose(const Matrix& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::numeric_failure,
         std::string(what) + ": eigendecomposition did not converge");
  }
  return SymmetricEigen{solver.eigenvalues(), solver.eigenvectors()};
}

double eigen_rank_tolerance(const Vector& eigenvalues) {
  const double largest = eigenvalues.cwiseAbs().maxCoeff();
  return std::max(1e-10 * largest, 1e-12);
}

Matrix pseudo_inverse_of(const SymmetricEigen& eigen) {
  const double tol = eigen_rank_tolerance(eigen.eigenvalues);
  Vector inverted = Vector::Zero(eigen.eigenvalues.size());
  for (Eigen::Index i = 0; i < eigen.eigenvalues.size(); ++i) {
    if (eigen.eigenvalues[i] > tol) inverted[i] = 1.0 / eigen.eigenvalues[i];
  }
  return eigen.q * inverted.asDiagonal() * eigen.q.transpose();
}

void require_translated(const NeighborPair& pair, const char* what) {
  if (!(pair.w_over_n > 0.0)) {
    fail(ErrorCode::bad_argument,
         std::string(what) + ": pair must be translated first");
  }
}

// The Laplacians of a neighbor pair must differ exactly by
// gamma·e_ab·e_ab^T; anything else means the pair was mis-assembled.
void check_pair_structure(const NeighborPair& pair) {
  const Matrix diff = laplacian(pair.g_prime) - laplacian(pair.g);
  const double gamma = pair.delta;
  const double tol = 1e-9 * std::max(1.0, std::abs(gamma));
  const int n = pair.g.node_count();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double expected = 0.0;
      if (i == j && (i == pair.a || i == pair.b)) expected = gamma;
      if (i != j && ((i == pair.a && j == pair.b) ||
                     (i == pair.b && j == pair.a))) {
        expected = -gamma;
      }
      if (std::abs(diff(i, j) - expected) > tol) {
        fail(ErrorCode::bad_argument,
             "neighbor pair: graphs differ beyond the declared edge");
      }
    }
  }
}

}  // namespace

DegenerateGaussian DegenerateGaussian::from_covariance(const Matrix& sigma) {
  if (sigma.rows() == 0 || sigma.rows() != sigma.cols()) {
    fail(ErrorCode::bad_argument, "covariance must be square and non-empty");
  }
  if (!linalg::is_symmetric(sigma, 1e-9)) {
    fail(ErrorCode::bad_argument, "covariance must be symmetric");
  }
  const SymmetricEigen eigen = decompose(sigma, "covariance");
  const double tol = eigen_rank_tolerance(eigen.eigenvalues);
  if (eigen.eigenvalues.minCoeff() < -tol) {
    fail(ErrorCode::bad_argument,
         "covariance must be positive semidefinite (smallest eigenvalue " +
             io::format_double(eigen.eigenvalues.minCoeff()) + ")");
  }

  DegenerateGaussian dg;
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < eigen.eigenvalues.size(); ++i) {
    if (eigen.eigenvalues[i] > tol) kept.push_back(i);
  }
  dg.rank_ = static_cast<Eigen::Index>(kept.size());
  dg.log_pseudo_det_ = 0.0;
  dg.support_basis_.resize(sigma.rows(), dg.rank_);
  Vector inverted = Vector::Zero(eigen.eigenvalues.size());
  for (Eigen::Index k = 0; k < dg.rank_; ++k) {
    const Eigen::Index i = kept[static_cast<size_t>(k)];
    dg.log_pseudo_det_ += std::log(eigen.eigenvalues[i]);
    dg.support_basis_.col(k) = eigen.q.col(i);
    inverted[i] = 1.0 / eigen.eigenvalues[i];
  }
  dg.pseudo_inverse_ = eigen.q * inverted.asDiagonal() * eigen.q.transpose();
  return dg;
}

double DegenerateGaussian::log_pdf(const Vector& x) const {
  if (x.size() != pseudo_inverse_.rows()) {
    fail(ErrorCode::bad_argument, "log_pdf: dimension mismatch");
  }
  const Vector projected = support_basis_ * (support_basis_.transpose() * x);
  if ((x - projected).norm() > 1e-6 * x.norm()) {
    fail(ErrorCode::bad_argument,
         "log_pdf: point lies outside the distribution's support");
  }
  const double quad = x.dot(pseudo_inverse_ * x);
  return -0.5 * (static_cast<double>(rank_) * kLnTwoPi + log_pseudo_det_ +
                 quad);
}

std::string report_key_values(const AuditReport& report) {
  std::ostringstream out;
  out << "epsilon0=" << io::format_double(report.epsilon0) << '\n'
      << "delta0=" << io::format_double(report.delta0) << '\n'
      << "det_ratio=" << io::format_double(report.det_ratio) << '\n'
      << "upper_bound_ok=" << (report.upper_bound_ok ? 1 : 0) << '\n'
      << "empirical_delta=" << io::format_double(report.empirical_delta)
      << '\n'
      << "trials=" << report.trials << '\n';
  for (const FactResult& fact : report.spectral_facts) {
    out << "fact_" << fact.name << '=' << (fact.pass ? "pass" : "fail")
        << '\n'
        << "fact_" << fact.name
        << "_margin=" << io::format_double(fact.margin) << '\n';
  }
  return out.str();
}

std::string report_csv_header() {
  return "epsilon0,delta0,det_ratio,upper_bound_ok,empirical_delta,trials,"
         "facts_passed,facts_total,min_fact_margin";
}

std::string report_csv_row(const AuditReport& report) {
  int passed = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (const FactResult& fact : report.spectral_facts) {
    if (fact.pass) ++passed;
    min_margin = std::min(min_margin, fact.margin);
  }
  if (report.spectral_facts.empty()) min_margin = 0.0;
  std::ostringstream out;
  out << io::format_double(report.epsilon0) << ','
      << io::format_double(report.delta0) << ','
      << io::format_double(report.det_ratio) << ','
      << (report.upper_bound_ok ? 1 : 0) << ','
      << io::format_double(report.empirical_delta) << ',' << report.trials
      << ',' << passed << ',' << report.spectral_facts.size() << ','
      << io::format_double(min_margin);
  return out.str();
}

bool report_all_passed(const AuditReport& report) {
  if (!report.upper_bound_ok) return false;
  for (const FactResult& fact : report.spectral_facts) {
    if (!fact.pass) return false;
  }
  return true;
}

PairStatistics pair_statistics(const NeighborPair& pair) {
  require_translated(pair, "pair_statistics");
  check_pair_structure(pair);
  const Matrix pinv = linalg::pseudo_inverse(laplacian(pair.g));
  PairStatistics stats;
  stats.gamma = pair.delta;
  stats.q = pinv(pair.a, pair.a) + pinv(pair.b, pair.b) -
            2.0 * pinv(pair.a, pair.b);
  const double product = stats.gamma * stats.q;
  if (product <= -1.0) {
    fail(ErrorCode::numeric_failure,
         "pair_statistics: degenerate pair, 1 + gamma·q <= 0");
  }
  stats.log_det_ratio = std::log1p(product);
  return stats;
}

double log_pdf_ratio(const PairStatistics& stats, double t1) {
  const double denom = 1.0 + stats.gamma * stats.q;
  return 0.5 * stats.log_det_ratio -
         0.5 * stats.gamma * t1 * t1 / denom;
}

UpperBoundResult pdf_ratio_upper_check(const NeighborPair& pair,
                                       const LaplacianReleaseParams& params) {
  require_translated(pair, "pdf_ratio_upper_check");
  check_pair_structure(pair);
  const DegenerateGaussian dg_g =
      DegenerateGaussian::from_covariance(laplacian(pair.g));
  const DegenerateGaussian dg_gp =
      DegenerateGaussian::from_covariance(laplacian(pair.g_prime));
  const int n = pair.g.node_count();
  if (dg_g.rank() != n - 1 || dg_gp.rank() != n - 1) {
    fail(ErrorCode::bad_argument,
         "pdf_ratio_upper_check: kernel dimension must be exactly 1 on "
         "both graphs");
  }
  UpperBoundResult result;
  result.det_ratio =
      std::exp(0.5 * (dg_gp.log_pseudo_det() - dg_g.log_pseudo_det()));
  result.bound = std::exp(1.0 / (pair.w_over_n * n));
  result.epsilon0 = params.epsilon0;
  result.ok = result.det_ratio <= result.bound + 1e-9;
  return result;
}

namespace {

long count_scalar_violations(const PairStatistics& stats, double epsilon0,
                             long trials, uint64_t seed, double stddev) {
  long violations = 0;
  for (long trial = 0; trial < trials; ++trial) {
    NormalSampler sampler(derive_seed(seed, static_cast<uint64_t>(trial)));
    const double t1 = stddev * sampler.next();
    if (log_pdf_ratio(stats, t1) < -epsilon0) ++violations;
  }
  return violations;
}

}  // namespace

double pdf_ratio_lower_mc(const PairStatistics& stats, double epsilon0,
                          long trials, uint64_t seed, SampleSide side) {
  if (trials < 1) {
    fail(ErrorCode::bad_argument, "pdf_ratio_lower_mc: trials must be >= 1");
  }
  const double product = stats.gamma * stats.q;
  const double variance =
      side == SampleSide::from_g ? stats.q : stats.q * (1.0 + product);
  if (!(variance >= 0.0)) {
    fail(ErrorCode::numeric_failure,
         "pdf_ratio_lower_mc: negative sampling variance");
  }
  const long violations = count_scalar_violations(
      stats, epsilon0, trials, seed, std::sqrt(variance));
  return static_cast<double>(violations) / static_cast<double>(trials);
}

double pdf_ratio_lower_mc(const NeighborPair& pair,
                          const LaplacianReleaseParams& params, long trials,
                          uint64_t seed, SampleSide side) {
  require_translated(pair, "pdf_ratio_lower_mc");
  if (trials < 10000) {
    fail(ErrorCode::bad_argument,
         "pdf_ratio_lower_mc: need at least 10^4 trials");
  }
  const int n = pair.g.node_count();
  if (n > 64) {
    // The full C(n,2)-dimensional draw is equivalent in distribution to
    // sampling the scalar statistic t1 directly; do that at scale.
    return pdf_ratio_lower_mc(pair_statistics(pair), params.epsilon0, trials,
                              seed, side);
  }
  check_pair_structure(pair);
  const DegenerateGaussian dg_g =
      DegenerateGaussian::from_covariance(laplacian(pair.g));
  const DegenerateGaussian dg_gp =
      DegenerateGaussian::from_covariance(laplacian(pair.g_prime));
  const Matrix e_source = edge_matrix(
      side == SampleSide::from_g ? pair.g : pair.g_prime);
  const Eigen::Index m = e_source.rows();

  long violations = 0;
  Vector y(m);
  for (long trial = 0; trial < trials; ++trial) {
    NormalSampler sampler(derive_seed(seed, static_cast<uint64_t>(trial)));
    for (Eigen::Index i = 0; i < m; ++i) y[i] = sampler.next();
    const Vector x = e_source.transpose() * y;
    if (dg_g.log_pdf(x) - dg_gp.log_pdf(x) < -params.epsilon0) ++violations;
  }
  return static_cast<double>(violations) / static_cast<double>(trials);
}

double mc_pass_threshold(double delta0, long trials) {
  return delta0 +
         3.0 * std::sqrt(delta0 * (1.0 - delta0) /
                         static_cast<double>(trials));
}

std::vector<FactResult> spectral_facts_check(const NeighborPair& pair,
                                             uint64_t seed) {
  require_translated(pair, "spectral_facts_check");
  check_pair_structure(pair);
  // The inequalities compare the larger graph against the smaller one;
  // orient the pair so "hi" carries the extra edge weight.
  const bool forward = pair.delta >= 0.0;
  const WeightedGraph& lo = forward ? pair.g : pair.g_prime;
  const WeightedGraph& hi = forward ? pair.g_prime : pair.g;
  const int n = lo.node_count();
  const double w = pair.w_over_n * n;

  const SymmetricEigen eig_lo = decompose(laplacian(lo), "laplacian");
  const SymmetricEigen eig_hi = decompose(laplacian(hi), "laplacian");
  const Matrix pinv_lo = pseudo_inverse_of(eig_lo);
  const Matrix pinv_hi = pseudo_inverse_of(eig_hi);

  std::vector<FactResult> facts;

  {
    double margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      margin = std::min(margin, eig_hi.eigenvalues[i] - eig_lo.eigenvalues[i]);
    }
    facts.push_back({"weyl_dominance", margin >= -kFactTolerance, margin});
  }
  {
    const double gap =
        eig_hi.eigenvalues.sum() - eig_lo.eigenvalues.sum();
    const double margin = 2.0 - gap;
    facts.push_back({"trace_gap", margin >= -kFactTolerance, margin});
  }
  {
    NormalSampler sampler(seed);
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = sampler.next();
      x.array() -= x.mean();  // restrict to the common support, 1-perp
      margin =
          std::min(margin, x.dot(pinv_lo * x) - x.dot(pinv_hi * x));
    }
    facts.push_back(
        {"inverse_order", margin >= -kFactTolerance, margin});
  }
  {
    const double second_smallest =
        std::min(eig_lo.eigenvalues[1], eig_hi.eigenvalues[1]);
    const double kernel_leak =
        std::max(std::abs(eig_lo.eigenvalues[0]),
                 std::abs(eig_hi.eigenvalues[0]));
    const double margin = second_smallest - w;
    facts.push_back({"kernel_floor",
                     margin >= -kFactTolerance &&
                         kernel_leak <= kFactTolerance,
                     margin});
  }
  {
    Vector e_ab = Vector::Zero(n);
    e_ab[pair.a] = 1.0;
    e_ab[pair.b] = -1.0;
    const double value = e_ab.dot(pinv_hi * e_ab);
    const double margin = 2.0 / w - value;
    facts.push_back({"cross_term", margin >= -kFactTolerance, margin});
  }
  return facts;
}

MatrixNeighborPair random_matrix_neighbor_pair(Eigen::Index n,
                                               Eigen::Index d,
                                               uint64_t seed) {
  if (n < d || d < 1) {
    fail(ErrorCode::bad_argument,
         "matrix neighbor pair: need rows >= cols >= 1");
  }
  NormalSampler sampler(seed);
  MatrixNeighborPair pair;
  pair.a.resize(n, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) pair.a(i, j) = sampler.next();
  }
  pair.row = static_cast<Eigen::Index>(sampler.uniform_source().next_u64() %
                                       static_cast<uint64_t>(n));
  Vector direction(d);
  for (Eigen::Index i = 0; i < d; ++i) direction[i] = sampler.next();
  if (direction.norm() < 1e-30) direction[0] = 1.0;
  direction.normalize();
  const double radius = sampler.uniform_source().next_double();
  pair.v = radius * direction;
  pair.a_prime = pair.a;
  pair.a_prime.row(pair.row) += pair.v.transpose();
  return pair;
}

namespace {

// Index of the single differing row, or -1 if the matrices are
// identical. Errors if more than one row differs or the difference
// exceeds unit norm.
Eigen::Index differing_row(const Matrix& a, const Matrix& a_prime) {
  if (a.rows() != a_prime.rows() || a.cols() != a_prime.cols()) {
    fail(ErrorCode::bad_argument, "neighbor matrices: shapes differ");
  }
  Eigen::Index row = -1;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double gap = (a_prime.row(i) - a.row(i)).norm();
    if (gap > 1e-12) {
      if (row >= 0) {
        fail(ErrorCode::bad_argument,
             "neighbor matrices: more than one row differs");
      }
      row = i;
      if (gap > 1.0 + 1e-9) {
        fail(ErrorCode::bad_argument,
             "neighbor matrices: row difference exceeds unit norm");
      }
    }
  }
  return row;
}

}  // namespace

LindskiiResult lindskii_check(const Matrix& a, const Matrix& a_prime) {
  if (a.rows() != a_prime.rows() || a.cols() != a_prime.cols()) {
    fail(ErrorCode::bad_argument, "neighbor matrices: shapes differ");
  }
  // Row-centering turns a one-row difference e_i·v^T into
  // (e_i - 1/n·1)·v^T, so the usable precondition is rank-1 with unit
  // spectral norm, which covers both raw and centered pairs.
  const Vector diff_sv = linalg::svd(a_prime - a).singular_values;
  if (diff_sv[0] > 1.0 + 1e-9) {
    fail(ErrorCode::bad_argument,
         "neighbor matrices: perturbation exceeds unit norm");
  }
  if (diff_sv.size() > 1 && diff_sv[1] > 1e-9) {
    fail(ErrorCode::bad_argument,
         "neighbor matrices: perturbation is not rank one");
  }
  const Vector sigma = linalg::svd(a).singular_values;
  const Vector lambda = linalg::svd(a_prime).singular_values;
  LindskiiResult result;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double gap = lambda[i] - sigma[i];
    if (gap > 0.0) {
      result.big_sum += gap;
    } else {
      result.small_sum -= gap;
    }
  }
  result.ok = result.big_sum <= 1.0 + kFactTolerance &&
              result.small_sum <= 1.0 + kFactTolerance;
  return result;
}

AuditReport covariance_ratio_audit(const Matrix& a, const Matrix& a_prime,
                                   const CovarianceReleaseParams& params,
                                   long trials, uint64_t seed) {
  check_data_matrix(a);
  check_data_matrix(a_prime);
  differing_row(a, a_prime);
  if (trials < 0) {
    fail(ErrorCode::bad_argument, "covariance audit: trials must be >= 0");
  }

  const Matrix centered = center_rows(a);
  const Matrix centered_p = center_rows(a_prime);
  const Matrix b = spectral_shift(centered, params.w);
  const Matrix b_p = spectral_shift(centered_p, params.w);
  const linalg::SvdFactors svd_b = linalg::svd(b);
  const linalg::SvdFactors svd_bp = linalg::svd(b_p);

  double log_det_b = 0.0;
  double log_det_bp = 0.0;
  for (Eigen::Index i = 0; i < svd_b.singular_values.size(); ++i) {
    log_det_b += 2.0 * std::log(svd_b.singular_values[i]);
    log_det_bp += 2.0 * std::log(svd_bp.singular_values[i]);
  }

  AuditReport report;
  report.epsilon0 = params.epsilon0;
  report.delta0 = params.delta0;
  report.trials = trials;
  report.det_ratio = std::exp(0.5 * (log_det_bp - log_det_b));
  report.upper_bound_ok =
      report.det_ratio <= std::exp(params.epsilon0 / 2.0) + 1e-9 &&
      report.det_ratio >= std::exp(-params.epsilon0 / 2.0) - 1e-9;

  // Inverses of the full-rank Gram matrices, from the same factors.
  const auto gram_inverse = [](const linalg::SvdFactors& f) {
    Vector inv_sq(f.singular_values.size());
    for (Eigen::Index i = 0; i < inv_sq.size(); ++i) {
      inv_sq[i] = 1.0 / (f.singular_values[i] * f.singular_values[i]);
    }
    return Matrix(f.v * inv_sq.asDiagonal() * f.v.transpose());
  };
  const Matrix inv_b = gram_inverse(svd_b);
  const Matrix inv_bp = gram_inverse(svd_bp);
  const double log_det_gap = 0.5 * (log_det_bp - log_det_b);

  const Eigen::Index n = a.rows();
  double worst_side_delta = 0.0;
  if (trials > 0) {
    for (const SampleSide side :
         {SampleSide::from_g, SampleSide::from_g_prime}) {
      const Matrix& source = side == SampleSide::from_g ? b : b_p;
      const uint64_t side_seed =
          derive_seed(seed, side == SampleSide::from_g ? 0 : 1);
      long violations = 0;
      Vector y(n);
      for (long trial = 0; trial < trials; ++trial) {
        NormalSampler sampler(
            derive_seed(side_seed, static_cast<uint64_t>(trial)));
        for (Eigen::Index i = 0; i < n; ++i) y[i] = sampler.next();
        const Vector x = source.transpose() * y;
        const double log_ratio =
            log_det_gap - 0.5 * (x.dot(inv_b * x) - x.dot(inv_bp * x));
        if (std::abs(log_ratio) > params.epsilon0) ++violations;
      }
      worst_side_delta = std::max(
          worst_side_delta,
          static_cast<double>(violations) / static_cast<double>(trials));
    }
  }
  report.empirical_delta = worst_side_delta;

  // Supporting facts.
  {
    const LindskiiResult lindskii = lindskii_check(centered, centered_p);
    const double margin =
        1.0 - std::max(lindskii.big_sum, lindskii.small_sum);
    report.spectral_facts.push_back({"lindskii_sums", lindskii.ok, margin});
  }
  {
    const Matrix raw_diff = a_prime - a;
    const Vector sv = linalg::svd(raw_diff).singular_values;
    const double expected_top = raw_diff.rowwise().norm().maxCoeff();
    double margin = std::abs(sv[0] - expected_top);
    if (sv.size() > 1) margin = std::max(margin, std::abs(sv[1]));
    report.spectral_facts.push_back(
        {"rank1_singular_values", margin <= kFactTolerance, margin});
  }
  {
    const Matrix e = centered_p - centered;
    const Matrix gap = (b_p.transpose() * b_p - b.transpose() * b) -
                       (centered_p.transpose() * e + e.transpose() * centered);
    // The Gram entries are of order w^2, so cancellation noise scales
    // with w^2 as well; compare relative to that.
    const double margin =
        gap.cwiseAbs().maxCoeff() / std::max(1.0, params.w * params.w);
    report.spectral_facts.push_back(
        {"gram_gap_identity", margin <= 1e-12, margin});
  }
  {
    NormalSampler sampler(derive_seed(seed, 2));
    const double factor = 1.0 + 1.0 / params.w;
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 100; ++k) {
      Vector z(b.cols());
      for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = sampler.next();
      const double norm_b = (b * z).norm();
      const double norm_bp = (b_p * z).norm();
      margin = std::min(margin, factor * norm_bp - norm_b);
      margin = std::min(margin, factor * norm_b - norm_bp);
    }
    report.spectral_facts.push_back(
        {"norm_comparability", margin >= -kFactTolerance, margin});
  }
  return report;
}

AuditReport audit_graph_release(double eps, double delta, double eta,
                                double nu, int desk_pairs, int desk_n,
                                long trials, uint64_t seed) {
  if (desk_pairs < 1 || desk_n < 3) {
    fail(ErrorCode::bad_argument,
         "graph audit: need desk_pairs >= 1 and desk_n >= 3");
  }
  // w does not depend on n; probe it at a huge n, then rerun the checks
  // at the smallest node count the parameters allow.
  const LaplacianReleaseParams probe =
      compute_params(eps, delta, eta, nu, 1 << 30);
  const int n_star = min_node_count(probe.w);
  // The Monte-Carlo stage diagonalizes an n_star x n_star Laplacian;
  // past a few thousand nodes that stops being a desk check.
  if (n_star > 4000) {
    fail(ErrorCode::parameter_range,
         "graph audit: these parameters give w = " +
             io::format_double(probe.w) + ", so the lower-bound check " +
             "needs a " + std::to_string(n_star) +
             "-node graph; raise eps or delta to keep it tractable");
  }
  const LaplacianReleaseParams params =
      compute_params(eps, delta, eta, nu, n_star);

  AuditReport report;
  report.epsilon0 = params.epsilon0;
  report.delta0 = params.delta0;
  report.trials = trials;

  Xoshiro256pp t_rng(derive_seed(seed, 0));
  bool all_upper = true;
  double worst_normalized_ratio = 0.0;
  std::vector<FactResult> merged;
  for (int k = 0; k < desk_pairs; ++k) {
    const NeighborPair raw = random_neighbor_pair(
        desk_n, derive_seed(seed, static_cast<uint64_t>(2 * k + 1)));
    const double t = 0.05 + 0.4 * t_rng.next_double();
    const NeighborPair pair = translate_pair(raw, t);
    const UpperBoundResult upper = pdf_ratio_upper_check(pair, params);
    all_upper = all_upper && upper.ok;
    worst_normalized_ratio =
        std::max(worst_normalized_ratio, upper.det_ratio / upper.bound);
    const std::vector<FactResult> facts = spectral_facts_check(
        pair, derive_seed(seed, static_cast<uint64_t>(2 * k + 2)));
    if (merged.empty()) {
      merged = facts;
    } else {
      for (size_t i = 0; i < facts.size(); ++i) {
        merged[i].pass = merged[i].pass && facts[i].pass;
        merged[i].margin = std::min(merged[i].margin, facts[i].margin);
      }
    }
  }
  report.det_ratio = worst_normalized_ratio;
  report.upper_bound_ok = all_upper;
  report.spectral_facts = std::move(merged);

  const NeighborPair extreme =
      translate_pair(extreme_neighbor_pair(n_star), params.w / n_star);
  const PairStatistics stats = pair_statistics(extreme);
  const uint64_t mc_base =
      derive_seed(seed, static_cast<uint64_t>(2 * desk_pairs + 1));
  const double from_g = pdf_ratio_lower_mc(
      stats, params.epsilon0, trials, derive_seed(mc_base, 0),
      SampleSide::from_g);
  const double from_gp = pdf_ratio_lower_mc(
      stats, params.epsilon0, trials, derive_seed(mc_base, 1),
      SampleSide::from_g_prime);
  report.empirical_delta = std::max(from_g, from_gp);
  const double threshold = mc_pass_threshold(params.delta0, trials);
  report.spectral_facts.push_back({"lower_bound_mc",
                                   report.empirical_delta <= threshold,
                                   threshold - report.empirical_delta});
  return report;
}

AuditReport audit_covariance_release(double eps, double delta, double eta,
                                     double nu, int desk_pairs,
                                     Eigen::Index desk_rows,
                                     Eigen::Index desk_cols, long trials,
                                     uint64_t seed) {
  if (desk_pairs < 1) {
    fail(ErrorCode::bad_argument, "covariance audit: need desk_pairs >= 1");
  }
  const CovarianceReleaseParams params =
      compute_params_cov(eps, delta, eta, nu);

  AuditReport merged_report;
  double worst_two_sided_ratio = 1.0;
  for (int k = 0; k < desk_pairs; ++k) {
    const MatrixNeighborPair pair = random_matrix_neighbor_pair(
        desk_rows, desk_cols, derive_seed(seed, static_cast<uint64_t>(k)));
    const long pair_trials = k == 0 ? trials : 0;
    const AuditReport report = covariance_ratio_audit(
        pair.a, pair.a_prime, params, pair_trials,
        derive_seed(seed, static_cast<uint64_t>(desk_pairs + k)));
    const double normalized =
        std::max(report.det_ratio, 1.0 / report.det_ratio);
    worst_two_sided_ratio = std::max(worst_two_sided_ratio, normalized);
    if (k == 0) {
      merged_report = report;
    } else {
      merged_report.upper_bound_ok =
          merged_report.upper_bound_ok && report.upper_bound_ok;
      for (size_t i = 0; i < report.spectral_facts.size(); ++i) {
        merged_report.spectral_facts[i].pass =
            merged_report.spectral_facts[i].pass &&
            report.spectral_facts[i].pass;
        // norm_comparability margins shrink toward 0 from above while
        // identity-check margins grow toward 0 from below; keep the
        // worst in the fact's own direction.
        if (report.spectral_facts[i].name == "rank1_singular_values" ||
            report.spectral_facts[i].name == "gram_gap_identity") {
          merged_report.spectral_facts[i].margin =
              std::max(merged_report.spectral_facts[i].margin,
                       report.spectral_facts[i].margin);
        } else {
          merged_report.spectral_facts[i].margin =
              std::min(merged_report.spectral_facts[i].margin,
                       report.spectral_facts[i].margin);
        }
      }
    }
  }
  merged_report.det_ratio = worst_two_sided_ratio;
  const double threshold = mc_pass_threshold(params.delta0, trials);
  merged_report.spectral_facts.push_back(
      {"density_event_mc", merged_report.empirical_delta <= threshold,
       threshold - merged_report.empirical_delta});
  return merged_report;
}

UnivariateDemoResult univariate_demo(const std::vector<int>& bits,
                                     double eps, double delta, double eta,
                                     double nu, uint64_t seed) {
  const int n = static_cast<int>(bits.size());
  for (int bit : bits) {
    if (bit != 0 && bit != 1) {
      fail(ErrorCode::bad_argument,
           "univariate demo: entries must be 0 or 1");
    }
  }
  UnivariateDemoResult result;
  result.params = compute_params(eps, delta, eta, nu, n);
  const double w_over_n = result.params.w / n;
  Vector translated(n);
  double count = 0.0;
  for (int i = 0; i < n; ++i) {
    translated[i] = std::sqrt(w_over_n + (1.0 - w_over_n) * bits[i]);
    count += bits[i];
  }
  const GaussianSketch sketch =
      sample_sketch(result.params.r, n, seed);
  const Vector projected = project(sketch, translated);
  const double norm_estimate =
      projected.squaredNorm() / static_cast<double>(result.params.r);
  result.estimate = invert_norm_estimate(norm_estimate, n, result.params.w);
  result.true_count = count;
  return result;
}

double invert_norm_estimate(double norm_estimate, int n, double w) {
  if (n < 1 || !(w > 0.0) || w / n >= 1.0) {
    fail(ErrorCode::bad_argument, "invert_norm_estimate: invalid n or w");
  }
  return (norm_estimate - w) / (1.0 - w / n);
}

}  // namespace jlp
