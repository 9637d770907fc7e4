#ifndef JLP_DP_LAPLACIAN_HPP
#define JLP_DP_LAPLACIAN_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "jlp/graph.hpp"
#include "jlp/linalg.hpp"

namespace jlp {

// Parameters of the sanitized-Laplacian release. r and w follow from
// (eps, delta, eta, nu); epsilon0/delta0 are the per-sketch-row privacy
// budget used by the audit module.
struct LaplacianReleaseParams {
  double eps = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double nu = 0.0;
  int r = 0;
  double w = 0.0;
  double epsilon0 = 0.0;
  double delta0 = 0.0;
};

// Evaluates r = ceil(8·ln(2/nu)/eta^2),
// w = sqrt(32·r·ln(2/delta))/eps · ln(4r/delta),
// epsilon0 = eps/sqrt(4r·ln(2/delta)), delta0 = delta/(2r).
// Requires eps > 0, delta in (0,1), eta in (0, 1/2], nu in (0,1).
// Errors when w <= 2 (parameters too weak) or w/n >= 1/2 (graph too
// small; the message names the minimum usable n).
LaplacianReleaseParams compute_params(double eps, double delta, double eta,
                                      double nu, int n);

// Smallest node count for which w/n < 1/2.
int min_node_count(double w);

// Published sanitized Laplacian: l_tilde = (1/r)·E_H^T M^T M E_H where
// H is the translated graph and M the seeded Gaussian sketch.
struct SanitizedLaplacian {
  Matrix l_tilde;
  int n = 0;
  LaplacianReleaseParams params;
  uint64_t seed = 0;
};

SanitizedLaplacian release_laplacian(const WeightedGraph& g,
                                     const LaplacianReleaseParams& params,
                                     uint64_t seed,
                                     size_t max_bytes = size_t{1} << 30);

// Audit-only variant that also returns the intermediate projection
// O = M·E_H (r x n). Released artifacts never include it.
struct LaplacianReleaseDebug {
  SanitizedLaplacian release;
  Matrix projected;
};
LaplacianReleaseDebug release_laplacian_with_projection(
    const WeightedGraph& g, const LaplacianReleaseParams& params,
    uint64_t seed, size_t max_bytes = size_t{1} << 30);

// Cut-query estimate from published data only:
//   R(S) = (1_S^T l_tilde 1_S - w·s(n-s)/n) / (1 - w/n).
// The query is evaluated on whichever of S / complement(S) contains
// node 0, so complementary queries return bit-identical answers.
double answer_cut_query(const SanitizedLaplacian& sl, const CutQuery& q);

// Additive error bound reported alongside answers: tau = 2·eta·w·s.
double cut_query_tau(const LaplacianReleaseParams& params, int s);

// One row of the sketch computed by the per-node distributed protocol:
// node i draws n-1-i fresh N(0,1) samples, one per higher-indexed
// neighbor j, and the sample for pair (i,j) contributes
// +x·sqrt(w_H(i,j)) to node i's output and -x·sqrt(w_H(i,j)) to node
// j's. The sample stream order equals the lexicographic pair order, so
// the result matches the centralized row Y^T E_H for the same seed.
struct DistributedRow {
  Vector node_outputs;
  std::vector<int> samples_drawn;
};
DistributedRow distributed_release_row(const WeightedGraph& g,
                                       const LaplacianReleaseParams& params,
                                       uint64_t seed);

// Release metadata (eps, delta, eta, nu, r, w, n, seed, generator) —
// all a verifier needs to re-run the release.
std::map<std::string, std::string> release_metadata(
    const SanitizedLaplacian& sl);
SanitizedLaplacian laplacian_from_parts(
    const Matrix& l_tilde, const std::map<std::string, std::string>& meta);

}  // namespace jlp

#endif  // JLP_DP_LAPLACIAN_HPP
