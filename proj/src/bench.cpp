#include "jlp/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "jlp/baselines.hpp"
#include "jlp/dp_laplacian.hpp"
#include "jlp/errors.hpp"
#include "jlp/io.hpp"
#include "jlp/rng.hpp"

namespace jlp {

const char* const kBenchCsvHeader =
    "mechanism,s,samples,mean_abs_err,median_abs_err,p95_abs_err,"
    "mean_rel_err,median_rel_err,p95_rel_err";

namespace {

double nearest_rank(const std::vector<double>& sorted, double level) {
  const size_t n = sorted.size();
  const size_t rank = static_cast<size_t>(
      std::ceil(level * static_cast<double>(n)));
  return sorted[std::max<size_t>(rank, 1) - 1];
}

// Distinct-node cut of size s drawn by partial Fisher-Yates.
CutQuery random_cut(int n, int s, Xoshiro256pp& rng) {
  std::vector<int> nodes(static_cast<size_t>(n));
  std::iota(nodes.begin(), nodes.end(), 0);
  for (int i = 0; i < s; ++i) {
    const int j = i + static_cast<int>(rng.next_u64() %
                                       static_cast<uint64_t>(n - i));
    std::swap(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)]);
  }
  nodes.resize(static_cast<size_t>(s));
  return make_cut_query(nodes, n);
}

BenchRow summarize(const std::string& mechanism, int s,
                   std::vector<double>& abs_errs,
                   std::vector<double>& rel_errs) {
  std::sort(abs_errs.begin(), abs_errs.end());
  std::sort(rel_errs.begin(), rel_errs.end());
  BenchRow row;
  row.mechanism = mechanism;
  row.s = s;
  row.samples = static_cast<long>(abs_errs.size());
  row.mean_abs_err =
      std::accumulate(abs_errs.begin(), abs_errs.end(), 0.0) /
      static_cast<double>(abs_errs.size());
  row.median_abs_err = nearest_rank(abs_errs, 0.5);
  row.p95_abs_err = nearest_rank(abs_errs, 0.95);
  row.mean_rel_err =
      std::accumulate(rel_errs.begin(), rel_errs.end(), 0.0) /
      static_cast<double>(rel_errs.size());
  row.median_rel_err = nearest_rank(rel_errs, 0.5);
  row.p95_rel_err = nearest_rank(rel_errs, 0.95);
  return row;
}

}  // namespace

std::vector<BenchRow> bench_sweep(const BenchConfig& config) {
  if (config.n < 3) {
    fail(ErrorCode::bad_argument, "bench: need n >= 3");
  }
  if (!(config.p > 0.0) || config.p > 1.0) {
    fail(ErrorCode::bad_argument, "bench: need p in (0, 1]");
  }
  if (config.seeds < 1 || config.cuts_per_size < 1 ||
      config.cut_sizes.empty()) {
    fail(ErrorCode::bad_argument,
         "bench: need seeds >= 1, cuts_per_size >= 1 and at least one "
         "cut size");
  }
  for (int s : config.cut_sizes) {
    if (s < 1 || s >= config.n) {
      fail(ErrorCode::bad_argument,
           "bench: cut sizes must lie strictly between 0 and n");
    }
  }

  // Everything below is deterministic in master_seed: stream 0 draws
  // the graph, stream 1 the cut queries, streams 2..5 the per-mechanism
  // release seeds.
  const WeightedGraph g =
      random_graph(config.n, config.p, derive_seed(config.master_seed, 0));
  const LaplacianReleaseParams params = compute_params(
      config.eps, config.delta, config.eta, config.nu, config.n);

  Xoshiro256pp cut_rng(derive_seed(config.master_seed, 1));
  std::vector<std::vector<CutQuery>> queries;
  std::vector<std::vector<double>> truths;
  for (int s : config.cut_sizes) {
    std::vector<CutQuery> batch;
    std::vector<double> truth_batch;
    for (int k = 0; k < config.cuts_per_size; ++k) {
      batch.push_back(random_cut(config.n, s, cut_rng));
      truth_batch.push_back(cut_value(g, batch.back()));
    }
    queries.push_back(std::move(batch));
    truths.push_back(std::move(truth_batch));
  }

  const size_t n_sizes = config.cut_sizes.size();
  const auto make_bins = [&] {
    return std::vector<std::vector<double>>(n_sizes);
  };
  std::vector<std::vector<double>> jl_abs = make_bins(), jl_rel = make_bins();
  std::vector<std::vector<double>> rr_abs = make_bins(), rr_rel = make_bins();
  std::vector<std::vector<double>> lap_abs = make_bins(),
                                   lap_rel = make_bins();
  std::vector<std::vector<double>> exp_abs = make_bins(),
                                   exp_rel = make_bins();

  const uint64_t jl_base = derive_seed(config.master_seed, 2);
  const uint64_t rr_base = derive_seed(config.master_seed, 3);
  const uint64_t lap_base = derive_seed(config.master_seed, 4);
  const uint64_t exp_base = derive_seed(config.master_seed, 5);
  const double rr_eps = std::min(config.eps, 1.0);

  const auto record = [&](std::vector<std::vector<double>>& abs_bins,
                          std::vector<std::vector<double>>& rel_bins,
                          size_t size_idx, size_t cut_idx, double estimate) {
    const double truth = truths[size_idx][cut_idx];
    const double abs_err = std::abs(estimate - truth);
    abs_bins[size_idx].push_back(abs_err);
    rel_bins[size_idx].push_back(abs_err / std::max(truth, 1e-300));
  };

  for (int seed_idx = 0; seed_idx < config.seeds; ++seed_idx) {
    const uint64_t k = static_cast<uint64_t>(seed_idx);
    const SanitizedLaplacian jl_release = release_laplacian(
        g, params, derive_seed(jl_base, k), config.max_bytes);
    const RrGraph rr_release =
        randomized_response_release(g, rr_eps, derive_seed(rr_base, k));
    const uint64_t lap_seed = derive_seed(lap_base, k);
    const double m_noisy =
        noisy_edge_total(g, config.eps, derive_seed(exp_base, k));

    uint64_t lap_query_index = 0;
    for (size_t si = 0; si < n_sizes; ++si) {
      for (size_t ci = 0; ci < queries[si].size(); ++ci) {
        const CutQuery& q = queries[si][ci];
        record(jl_abs, jl_rel, si, ci, answer_cut_query(jl_release, q));
        record(rr_abs, rr_rel, si, ci, rr_cut_estimate(rr_release, q));
        record(lap_abs, lap_rel, si, ci,
               laplace_cut(g, q, config.eps,
                           derive_seed(lap_seed, lap_query_index++)));
        record(exp_abs, exp_rel, si, ci,
               expected_cut_guess(m_noisy, config.n, q));
      }
    }
  }

  std::vector<BenchRow> rows;
  for (size_t si = 0; si < n_sizes; ++si) {
    const int s = config.cut_sizes[si];
    rows.push_back(summarize("expected", s, exp_abs[si], exp_rel[si]));
    rows.push_back(summarize("jl", s, jl_abs[si], jl_rel[si]));
    rows.push_back(summarize("laplace", s, lap_abs[si], lap_rel[si]));
    rows.push_back(summarize("rr", s, rr_abs[si], rr_rel[si]));
  }
  std::sort(rows.begin(), rows.end(),
            [](const BenchRow& a, const BenchRow& b) {
              if (a.mechanism != b.mechanism) return a.mechanism < b.mechanism;
              return a.s < b.s;
            });
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kBenchCsvHeader << '\n';
  for (const BenchRow& row : rows) {
    out << row.mechanism << ',' << row.s << ',' << row.samples << ','
        << io::format_double(row.mean_abs_err) << ','
        << io::format_double(row.median_abs_err) << ','
        << io::format_double(row.p95_abs_err) << ','
        << io::format_double(row.mean_rel_err) << ','
        << io::format_double(row.median_rel_err) << ','
        << io::format_double(row.p95_rel_err) << '\n';
  }
  return out.str();
}

}  // namespace jlp
