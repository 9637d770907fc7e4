#ifndef JLP_BENCH_HPP
#define JLP_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jlp/graph.hpp"

namespace jlp {

// One benchmark sweep: a G(n, p) graph, a grid of cut sizes, and a
// batch of release seeds per mechanism at matched (eps, delta).
struct BenchConfig {
  int n = 200;
  double p = 0.5;
  double eps = 1000.0;
  double delta = 0.1;
  double eta = 0.1;
  double nu = 0.2706705664732254;  // 2·e^-2
  std::vector<int> cut_sizes = {5, 10, 20, 50};
  int seeds = 200;
  int cuts_per_size = 50;
  uint64_t master_seed = 0;
  size_t max_bytes = size_t{1} << 30;
};

// One output row: error statistics for a (mechanism, cut size) cell
// aggregated over seeds x cuts_per_size query answers. Percentiles use
// the nearest-rank rule on the sorted absolute errors; relative errors
// divide by the true cut value.
struct BenchRow {
  std::string mechanism;
  int s = 0;
  long samples = 0;
  double mean_abs_err = 0.0;
  double median_abs_err = 0.0;
  double p95_abs_err = 0.0;
  double mean_rel_err = 0.0;
  double median_rel_err = 0.0;
  double p95_rel_err = 0.0;
};

// Runs the four mechanisms on one shared graph:
//   "jl"       sanitized-Laplacian release, full (eps, delta)
//   "rr"       randomized response at min(eps, 1) (its validity cap)
//   "laplace"  per-query Laplace(1/eps) noise
//   "expected" expected-cut guess from a noisy edge total
// Rows come back sorted by (mechanism, s) regardless of execution
// order. Deterministic in master_seed.
std::vector<BenchRow> bench_sweep(const BenchConfig& config);

// Fixed-column CSV; columns are append-only for tooling stability.
extern const char* const kBenchCsvHeader;
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace jlp

#endif  // JLP_BENCH_HPP
