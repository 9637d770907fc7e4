// End-to-end acceptance checks for the sanitized-release library and
// its command-line front end. Each criterion prints one PASS/FAIL line
// with the measured quantity, its threshold, and the elapsed time; the
// process exits nonzero iff any criterion fails.

#include <stdlib.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "jlp/audit.hpp"
#include "jlp/baselines.hpp"
#include "jlp/bench.hpp"
#include "jlp/dp_covariance.hpp"
#include "jlp/dp_laplacian.hpp"
#include "jlp/errors.hpp"
#include "jlp/graph.hpp"
#include "jlp/io.hpp"
#include "jlp/jl.hpp"
#include "jlp/linalg.hpp"
#include "jlp/rng.hpp"

namespace {

constexpr double kNu = 0.2706705664732254;  // 2·e^-2

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

bool report(int index, const char* name, bool pass,
            const std::string& detail, double elapsed) {
  std::printf("%s c%d %s: %s [%.1f s]\n", pass ? "PASS" : "FAIL", index,
              name, detail.c_str(), elapsed);
  std::fflush(stdout);
  return pass;
}

std::string num(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

// Sketch concentration: the (1 +- eta) norm sandwich fails with
// frequency at most nu.
bool criterion1() {
  Timer timer;
  const double eta = 0.25;
  const double nu = 0.05;
  const int r = jlp::jl_dim(eta, nu).r;

  jlp::NormalSampler x_sampler(2024);
  jlp::Vector x(100);
  for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = x_sampler.next();
  const double norm_sq = x.squaredNorm();

  const long trials = 10000;
  long failures = 0;
  for (long trial = 0; trial < trials; ++trial) {
    const jlp::GaussianSketch sketch = jlp::sample_sketch(
        r, x.size(), jlp::derive_seed(101, static_cast<uint64_t>(trial)));
    const double estimate =
        jlp::project(sketch, x).squaredNorm() / static_cast<double>(r);
    if (estimate < (1.0 - eta) * norm_sq || estimate > (1.0 + eta) * norm_sq) {
      ++failures;
    }
  }
  const double rate = static_cast<double>(failures) / trials;
  const double limit = nu + 0.007;
  const double elapsed = timer.seconds();
  return report(1, "jl-concentration",
                rate <= limit && elapsed < 30.0,
                "failure rate " + num(rate) + " <= " + num(limit) + " (r=" +
                    std::to_string(r) + ")",
                elapsed);
}

// Deterministic privacy upper bound: sqrt of the pseudo-determinant
// ratio stays below e^{1/w} on every random translated pair.
bool criterion2() {
  Timer timer;
  const jlp::LaplacianReleaseParams params =
      jlp::compute_params(1.0, 0.1, 0.5, kNu, 1230);
  jlp::Xoshiro256pp t_rng(201);
  int failures = 0;
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const jlp::NeighborPair raw = jlp::random_neighbor_pair(
        8, jlp::derive_seed(202, static_cast<uint64_t>(k)));
    const double t = 0.05 + 0.4 * t_rng.next_double();
    const jlp::NeighborPair pair = jlp::translate_pair(raw, t);
    const jlp::UpperBoundResult result =
        jlp::pdf_ratio_upper_check(pair, params);
    if (!result.ok) ++failures;
    worst = std::max(worst, result.det_ratio / result.bound);
  }
  const double elapsed = timer.seconds();
  return report(2, "privacy-upper-bound",
                failures == 0 && elapsed < 10.0,
                "failures " + std::to_string(failures) +
                    "/200, worst ratio/bound " + num(worst),
                elapsed);
}

// Monte-Carlo privacy lower bound on the extreme pair at the smallest
// node count the canonical parameters allow.
bool criterion3() {
  Timer timer;
  const jlp::LaplacianReleaseParams probe =
      jlp::compute_params(1.0, 0.1, 0.5, kNu, 1 << 30);
  const int n_star = jlp::min_node_count(probe.w);
  const jlp::LaplacianReleaseParams params =
      jlp::compute_params(1.0, 0.1, 0.5, kNu, n_star);
  const jlp::NeighborPair extreme = jlp::translate_pair(
      jlp::extreme_neighbor_pair(n_star), params.w / n_star);
  const jlp::PairStatistics stats = jlp::pair_statistics(extreme);

  const long trials = 100000;
  const double from_g = jlp::pdf_ratio_lower_mc(
      stats, params.epsilon0, trials, 301, jlp::SampleSide::from_g);
  const double from_gp = jlp::pdf_ratio_lower_mc(
      stats, params.epsilon0, trials, 302, jlp::SampleSide::from_g_prime);
  const double fraction = std::max(from_g, from_gp);
  const double threshold =
      params.delta0 + 3.0 * std::sqrt(params.delta0 / trials);
  const double elapsed = timer.seconds();
  return report(3, "privacy-lower-bound-mc",
                fraction <= threshold && elapsed < 60.0,
                "violation fraction " + num(fraction) + " <= " +
                    num(threshold) + " (n=" + std::to_string(n_star) + ")",
                elapsed);
}

// Cut utility: answers fall in (1 +- eta)*truth +- 2*eta*w*s at rate
// >= 1 - nu - slack.
bool criterion4() {
  Timer timer;
  const int n = 200;
  const double eta = 0.5;
  const jlp::WeightedGraph g = jlp::random_graph(n, 0.5, 400);
  const jlp::LaplacianReleaseParams params =
      jlp::compute_params(20.0, 0.1, eta, kNu, n);

  jlp::Xoshiro256pp pick(401);
  std::vector<jlp::CutQuery> cuts;
  std::vector<double> truths;
  while (cuts.size() < 50) {
    std::vector<int> members;
    while (members.size() < 20) {
      const int cand = static_cast<int>(pick.next_u64() % n);
      bool seen = false;
      for (int m : members) seen = seen || m == cand;
      if (!seen) members.push_back(cand);
    }
    cuts.push_back(jlp::make_cut_query(members, n));
    truths.push_back(jlp::cut_value(g, cuts.back()));
  }
  const double tau = jlp::cut_query_tau(params, 20);

  long in_band = 0;
  long total = 0;
  for (int seed_idx = 0; seed_idx < 200; ++seed_idx) {
    const jlp::SanitizedLaplacian release = jlp::release_laplacian(
        g, params, jlp::derive_seed(402, static_cast<uint64_t>(seed_idx)));
    for (size_t c = 0; c < cuts.size(); ++c) {
      const double answer = jlp::answer_cut_query(release, cuts[c]);
      const double lo = (1.0 - eta) * truths[c] - tau;
      const double hi = (1.0 + eta) * truths[c] + tau;
      if (answer >= lo && answer <= hi) ++in_band;
      ++total;
    }
  }
  const double freq = static_cast<double>(in_band) / total;
  const double threshold = 1.0 - kNu - 0.02;
  const double elapsed = timer.seconds();
  return report(4, "cut-utility", freq >= threshold && elapsed < 300.0,
                "in-band " + num(freq) + " >= " + num(threshold) + " (w=" +
                    num(params.w) + ")",
                elapsed);
}

// Directional-variance utility: same shape of band for the covariance
// release.
bool criterion5() {
  Timer timer;
  const double eta = 0.25;
  const double nu = 0.05;
  const jlp::CovarianceReleaseParams params =
      jlp::compute_params_cov(500.0, 0.1, eta, nu);

  jlp::NormalSampler data_sampler(500);
  jlp::Matrix a(50, 5);
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = data_sampler.next();
  const jlp::Matrix centered = jlp::center_rows(a);

  jlp::NormalSampler dir_sampler(501);
  std::vector<jlp::Vector> directions;
  std::vector<double> truths;
  for (int k = 0; k < 50; ++k) {
    jlp::Vector x(5);
    for (Eigen::Index i = 0; i < 5; ++i) x[i] = dir_sampler.next();
    x.normalize();
    directions.push_back(x);
    truths.push_back((centered * x).squaredNorm());
  }
  const double tau = eta * params.w * params.w;

  long in_band = 0;
  long total = 0;
  for (int seed_idx = 0; seed_idx < 200; ++seed_idx) {
    const jlp::SanitizedCovariance release = jlp::release_covariance(
        a, params, jlp::derive_seed(502, static_cast<uint64_t>(seed_idx)));
    for (size_t c = 0; c < directions.size(); ++c) {
      const double answer =
          jlp::answer_direction_query(release, directions[c]);
      const double lo = (1.0 - eta) * truths[c] - tau;
      const double hi = (1.0 + eta) * truths[c] + tau;
      if (answer >= lo && answer <= hi) ++in_band;
      ++total;
    }
  }
  const double freq = static_cast<double>(in_band) / total;
  const double threshold = 1.0 - nu - 0.02;
  const double elapsed = timer.seconds();
  return report(5, "variance-utility", freq >= threshold && elapsed < 120.0,
                "in-band " + num(freq) + " >= " + num(threshold) + " (w=" +
                    num(params.w) + ")",
                elapsed);
}

// Spectral fact suite across 500 generated pairs (half graph pairs,
// half matrix pairs): zero violations beyond the 1e-8 tolerance.
bool criterion6() {
  Timer timer;
  long violations = 0;
  jlp::Xoshiro256pp t_rng(600);
  for (int k = 0; k < 250; ++k) {
    const jlp::NeighborPair pair = jlp::translate_pair(
        jlp::random_neighbor_pair(
            8, jlp::derive_seed(601, static_cast<uint64_t>(k))),
        0.05 + 0.4 * t_rng.next_double());
    for (const jlp::FactResult& fact : jlp::spectral_facts_check(
             pair, jlp::derive_seed(602, static_cast<uint64_t>(k)))) {
      if (!fact.pass) ++violations;
    }
  }
  for (int k = 0; k < 250; ++k) {
    const jlp::MatrixNeighborPair pair = jlp::random_matrix_neighbor_pair(
        10, 4, jlp::derive_seed(603, static_cast<uint64_t>(k)));
    if (!jlp::lindskii_check(pair.a, pair.a_prime).ok) ++violations;
  }
  const double elapsed = timer.seconds();
  return report(6, "spectral-facts", violations == 0 && elapsed < 60.0,
                "violations " + std::to_string(violations) +
                    "/500 pairs checked",
                elapsed);
}

// Distributed protocol equals the centralized sketch row bit for bit
// (within 1e-10) on every random graph.
bool criterion7() {
  Timer timer;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 5 + (k % 8);  // cycles 5..12
    const jlp::WeightedGraph g = jlp::random_weighted_graph(
        n, jlp::derive_seed(700, static_cast<uint64_t>(k)));
    const jlp::LaplacianReleaseParams params =
        jlp::compute_params(280.0, 0.1, 0.5, kNu, n);
    const uint64_t seed = jlp::derive_seed(701, static_cast<uint64_t>(k));

    const jlp::DistributedRow row =
        jlp::distributed_release_row(g, params, seed);
    jlp::LaplacianReleaseParams one_row = params;
    one_row.r = 1;
    const jlp::LaplacianReleaseDebug debug =
        jlp::release_laplacian_with_projection(g, one_row, seed);
    const double diff =
        (row.node_outputs.transpose() - debug.projected.row(0))
            .cwiseAbs()
            .maxCoeff();
    worst = std::max(worst, diff);
  }
  const double elapsed = timer.seconds();
  return report(7, "distributed-equivalence", worst <= 1e-10,
                "max per-entry gap " + num(worst) + " <= 1e-10", elapsed);
}

// Randomized-response error bound at its stated confidence rate.
bool criterion8() {
  Timer timer;
  const int n = 100;
  const double eps = 0.5;
  const double nu = 0.05;
  const jlp::WeightedGraph g = jlp::random_graph(n, 0.3, 800);

  jlp::Xoshiro256pp pick(801);
  std::vector<int> members;
  while (members.size() < 10) {
    const int cand = static_cast<int>(pick.next_u64() % n);
    bool seen = false;
    for (int m : members) seen = seen || m == cand;
    if (!seen) members.push_back(cand);
  }
  const jlp::CutQuery q = jlp::make_cut_query(members, n);
  const double truth = jlp::cut_value(g, q);
  const double bound =
      std::sqrt(2.0 * std::log(1.0 / nu) * 10.0 * 90.0) / eps;

  long within = 0;
  const long releases = 1000;
  for (long k = 0; k < releases; ++k) {
    const jlp::RrGraph h = jlp::randomized_response_release(
        g, eps, jlp::derive_seed(802, static_cast<uint64_t>(k)));
    if (std::abs(jlp::rr_cut_estimate(h, q) - truth) <= bound) ++within;
  }
  const double freq = static_cast<double>(within) / releases;
  const double threshold = 1.0 - 2.0 * nu - 0.02;
  return report(8, "rr-error-bound", freq >= threshold,
                "in-bound " + num(freq) + " >= " + num(threshold) +
                    " (bound=" + num(bound) + ")",
                timer.seconds());
}

// Small-cut dominance: the JL release beats randomized response on
// mean absolute error at s=5 under matched (eps, delta).
bool criterion9() {
  Timer timer;
  jlp::BenchConfig config;
  config.n = 200;
  config.p = 0.5;
  config.eps = 1000.0;
  config.delta = 0.1;
  config.eta = 0.1;
  config.nu = kNu;
  config.cut_sizes = {5};
  config.seeds = 200;
  config.cuts_per_size = 50;
  config.master_seed = 900;

  const std::vector<jlp::BenchRow> rows = jlp::bench_sweep(config);
  double jl_mae = -1.0;
  double rr_mae = -1.0;
  for (const jlp::BenchRow& row : rows) {
    if (row.s != 5) continue;
    if (row.mechanism == "jl") jl_mae = row.mean_abs_err;
    if (row.mechanism == "rr") rr_mae = row.mean_abs_err;
  }
  const bool pass = jl_mae >= 0.0 && rr_mae >= 0.0 && jl_mae < rr_mae;
  return report(9, "small-cut-benchmark", pass,
                "jl mean abs err " + num(jl_mae) + " < rr " + num(rr_mae),
                timer.seconds());
}

// --- CLI determinism ---------------------------------------------------

int run_cli(const std::string& command_line) {
  return std::system((command_line + " > /dev/null").c_str());
}

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing:" + path + ">";
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

bool criterion10(const std::string& cli) {
  Timer timer;
  std::string workspace;
  {
    std::string tmpl = (std::filesystem::temp_directory_path() /
                        "jlp_accept_XXXXXX")
                           .string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (mkdtemp(buf.data()) == nullptr) {
      return report(10, "cli-determinism", false, "mkdtemp failed", 0.0);
    }
    workspace = buf.data();
  }

  const std::string graph_path = workspace + "/g.txt";
  jlp::write_edge_list(graph_path, jlp::random_graph(12, 0.5, 42),
                       "input graph");
  jlp::Matrix data(8, 3);
  jlp::NormalSampler sampler(1301);
  for (Eigen::Index j = 0; j < 3; ++j)
    for (Eigen::Index i = 0; i < 8; ++i) data(i, j) = sampler.next();
  const std::string data_path = workspace + "/data.csv";
  jlp::io::write_matrix_csv(data_path, data, "input data");
  const std::string cuts_path = workspace + "/cuts.txt";
  std::ofstream(cuts_path) << "0 1 2\n3 4\n";
  const std::string dirs_path = workspace + "/dirs.txt";
  std::ofstream(dirs_path) << "1,0,0\n0,1,0\n";
  const std::string bits_path = workspace + "/bits.txt";
  std::ofstream(bits_path) << "1 0 1 1 0 1\n";

  const std::string canonical_nu = "0.2706705664732254";
  int command_failures = 0;
  std::vector<std::string> artifacts;
  for (const std::string run : {"a", "b"}) {
    const std::string dir = workspace + "/run_" + run;
    std::filesystem::create_directory(dir);
    const std::vector<std::string> commands = {
        " release-laplacian --eps 250 --delta 0.1 --eta 0.5 --nu " +
            canonical_nu + " --seed 7 --input " + graph_path + " --output " +
            dir + "/lap",
        " query-cut --input " + dir + "/lap --queries " + cuts_path +
            " --output " + dir + "/cut_answers.csv",
        " release-covariance --eps 500 --delta 0.1 --eta 0.25 --nu 0.05 "
        "--seed 7 --input " +
            data_path + " --output " + dir + "/cov",
        " query-variance --input " + dir + "/cov --queries " + dirs_path +
            " --output " + dir + "/var_answers.csv",
        " release-mean --eps 2 --delta 0.1 --seed 7 --input " + data_path +
            " --output " + dir + "/mean.csv",
        " rr-release --eps 0.9 --seed 7 --input " + graph_path +
            " --output " + dir + "/rr.txt",
        " baseline-laplace --eps 2 --seed 7 --input " + graph_path +
            " --queries " + cuts_path + " --output " + dir + "/laplace.csv",
        " audit-graph --eps 250 --delta 0.1 --eta 0.5 --nu " + canonical_nu +
            " --seed 7 --pairs 2 --desk-n 8 --trials 5000 --output " + dir +
            "/audit_graph.txt",
        " audit-covariance --eps 500 --delta 0.1 --eta 0.25 --nu 0.05 "
        "--seed 7 --pairs 2 --rows 8 --cols 3 --trials 2000 --output " +
            dir + "/audit_cov.txt",
        " demo-univariate --eps 250 --delta 0.1 --eta 0.5 --nu " +
            canonical_nu + " --seed 7 --input " + bits_path + " --output " +
            dir + "/demo.txt",
        " bench --eps 300 --delta 0.1 --eta 0.1 --nu " + canonical_nu +
            " --seed 7 --n 30 --p 0.5 --cut-sizes 3 --bench-seeds 1 "
            "--cuts-per-size 2 --output " +
            dir + "/bench.csv",
    };
    for (const std::string& args : commands) {
      if (run_cli(cli + args) != 0) ++command_failures;
    }
  }

  int mismatches = 0;
  const std::vector<std::string> files = {
      "lap.csv",        "lap.meta",  "cut_answers.csv", "cov.csv",
      "cov.meta",       "var_answers.csv", "mean.csv",  "rr.txt",
      "laplace.csv",    "audit_graph.txt", "audit_cov.txt", "demo.txt",
      "bench.csv"};
  for (const std::string& file : files) {
    if (read_bytes(workspace + "/run_a/" + file) !=
        read_bytes(workspace + "/run_b/" + file)) {
      ++mismatches;
    }
  }

  std::error_code ec;
  std::filesystem::remove_all(workspace, ec);
  const bool pass = command_failures == 0 && mismatches == 0;
  return report(10, "cli-determinism", pass,
                std::to_string(files.size()) + " artifacts compared, " +
                    std::to_string(mismatches) + " mismatches, " +
                    std::to_string(command_failures) + " command failures",
                timer.seconds());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-jlp-cli>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];

  bool all = true;
  const std::vector<bool (*)()> library_criteria = {
      criterion1, criterion2, criterion3, criterion4, criterion5,
      criterion6, criterion7, criterion8, criterion9};
  int index = 1;
  for (const auto criterion : library_criteria) {
    try {
      all = criterion() && all;
    } catch (const std::exception& e) {
      all = report(index, "exception", false, e.what(), 0.0);
    }
    ++index;
  }
  try {
    all = criterion10(cli) && all;
  } catch (const std::exception& e) {
    all = report(10, "cli-determinism", false, e.what(), 0.0);
  }

  std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed"
                          : "ACCEPTANCE: FAILURES PRESENT");
  return all ? 0 : 1;
}
