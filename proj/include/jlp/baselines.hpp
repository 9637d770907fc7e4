#ifndef JLP_BASELINES_HPP
#define JLP_BASELINES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jlp/graph.hpp"
#include "jlp/rng.hpp"

namespace jlp {

// One Laplace(0, scale) sample via inverse-CDF on an open uniform.
double sample_laplace(Xoshiro256pp& rng, double scale);

// True cut value plus Laplace(1/eps) noise. Deterministic in seed.
double laplace_cut(const WeightedGraph& g, const CutQuery& q, double eps,
                   uint64_t seed);

// Total edge weight plus Laplace(1/eps) noise, the input to
// expected_cut_guess.
double noisy_edge_total(const WeightedGraph& g, double eps, uint64_t seed);

// Randomized-response release: every pair carries an independent sign,
// +1 with probability (1 + eps·w)/2. signs are indexed by pair_index.
struct RrGraph {
  int n = 0;
  std::vector<int8_t> signs;
  double eps = 0.0;
  uint64_t seed = 0;
};

// Requires 0 < eps <= 1 so the probabilities stay valid for weights up
// to 1. Deterministic in seed.
RrGraph randomized_response_release(const WeightedGraph& g, double eps,
                                    uint64_t seed);

// Unbiased cut estimate (1/eps)·sum of the released signs across the
// cut.
double rr_cut_estimate(const RrGraph& h, const CutQuery& q);

// Optional post-processing: maps each sign from {-1,+1} to a {0,1}
// weight via (sign+1)/2. Estimates are computed on the signed form.
WeightedGraph rr_to_nonnegative(const RrGraph& h);

// Serializes the signed release in the edge-list format (weights are
// -1 or 1, one line per pair).
void write_rr_edge_list(const std::string& path, const RrGraph& h,
                        const std::string& header_comment = "");

// Cheap non-private-data guess: a cut of size s is expected to cross
// (m/C(n,2))·s(n-s) edges; m_noisy is a privately released edge total.
double expected_cut_guess(double m_noisy, int n, const CutQuery& q);

}  // namespace jlp

#endif  // JLP_BASELINES_HPP
