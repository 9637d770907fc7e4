// jlp — command-line front end for the jlprivacy shared library.
//
// Every command takes an explicit --seed (no wall-clock defaults), so
// rerunning with the same flags reproduces outputs byte for byte. All
// output files begin with a '#' provenance comment carrying the full
// parameter set and seed. Exit codes mirror the library's error codes;
// audit commands additionally exit 1 when a privacy check fails.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jlprivacy.h"

namespace {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

[[noreturn]] void die(int code) {
  std::cerr << "error: " << jlp_last_error() << '\n';
  std::exit(code);
}

[[noreturn]] void die_message(int code, const std::string& message) {
  std::cerr << "error: " << message << '\n';
  std::exit(code);
}

void check(int code) {
  if (code != JLP_OK) die(code);
}

template <typename T, void (*Destroy)(T*)>
class Handle {
 public:
  Handle() = default;
  ~Handle() {
    if (ptr_ != nullptr) Destroy(ptr_);
  }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  T** out() { return &ptr_; }
  T* get() const { return ptr_; }

 private:
  T* ptr_ = nullptr;
};

using GraphHandle = Handle<jlp_graph, jlp_graph_destroy>;
using MatrixHandle = Handle<jlp_matrix, jlp_matrix_destroy>;
using LaplacianHandle =
    Handle<jlp_laplacian_release, jlp_laplacian_release_destroy>;
using CovarianceHandle =
    Handle<jlp_covariance_release, jlp_covariance_release_destroy>;
using RrHandle = Handle<jlp_rr_release, jlp_rr_release_destroy>;

class OwnedString {
 public:
  OwnedString() = default;
  ~OwnedString() { jlp_string_free(ptr_); }
  OwnedString(const OwnedString&) = delete;
  OwnedString& operator=(const OwnedString&) = delete;
  char** out() { return &ptr_; }
  const char* get() const { return ptr_; }

 private:
  char* ptr_ = nullptr;
};

std::vector<std::string> read_data_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) die_message(JLP_ERR_INGESTION, "cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t pos = line.find_first_not_of(" \t");
    if (pos == std::string::npos || line[pos] == '#') continue;
    lines.push_back(line);
  }
  if (lines.empty()) {
    die_message(JLP_ERR_INGESTION, "no data lines in '" + path + "'");
  }
  return lines;
}

// Cut-query file: one cut per line, space-separated node ids.
struct CutBatch {
  std::vector<int> members;
  std::vector<int> offsets;  // query i = members[offsets[i]..offsets[i+1])
};

CutBatch read_cut_file(const std::string& path) {
  CutBatch batch;
  batch.offsets.push_back(0);
  for (const std::string& line : read_data_lines(path)) {
    std::istringstream fields(line);
    int node = 0;
    int count = 0;
    while (fields >> node) {
      batch.members.push_back(node);
      ++count;
    }
    if (!fields.eof() || count == 0) {
      die_message(JLP_ERR_INGESTION,
                  path + ": bad cut line '" + line + "'");
    }
    batch.offsets.push_back(static_cast<int>(batch.members.size()));
  }
  return batch;
}

// Direction file: one direction per line, comma-separated reals.
std::vector<std::vector<double>> read_direction_file(
    const std::string& path) {
  std::vector<std::vector<double>> directions;
  for (const std::string& line : read_data_lines(path)) {
    std::vector<double> direction;
    size_t start = 0;
    while (start <= line.size()) {
      size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      const std::string field = line.substr(start, end - start);
      char* tail = nullptr;
      const double value = std::strtod(field.c_str(), &tail);
      if (tail == field.c_str() || *tail != '\0') {
        die_message(JLP_ERR_INGESTION,
                    path + ": bad direction field '" + field + "'");
      }
      direction.push_back(value);
      start = end + 1;
    }
    directions.push_back(std::move(direction));
  }
  return directions;
}

// The key=value pairs of a release metadata file, joined into one
// provenance line.
std::string release_provenance(const std::string& meta_path) {
  std::string joined;
  for (const std::string& line : read_data_lines(meta_path)) {
    if (!joined.empty()) joined += ' ';
    joined += line;
  }
  return joined;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die_message(JLP_ERR_INGESTION, "cannot write '" + path + "'");
  out << content;
  if (!out) die_message(JLP_ERR_INGESTION, "failed writing '" + path + "'");
}

// All flag values, shared across subcommands; each subcommand binds the
// subset it needs.
struct Options {
  double eps = 0.0;
  double delta = 0.0;
  double eta = 0.0;
  double nu = 0.0;
  uint64_t seed = 0;
  std::string input;
  std::string queries;
  std::string output;
  long trials = 100000;
  std::string format = "keyvalue";
  size_t max_bytes = size_t{1} << 30;
  int pairs = 25;
  int cov_pairs = 10;
  int desk_n = 8;
  int rows = 12;
  int cols = 4;
  bool nonnegative = false;
  int bench_n = 200;
  double bench_p = 0.5;
  std::vector<int> cut_sizes = {5, 10, 20, 50};
  int bench_seeds = 200;
  int cuts_per_size = 50;
};

std::string privacy_provenance(const char* command, const Options& opt,
                               bool with_delta, bool with_jl_params) {
  std::string line = std::string("command=") + command +
                     " eps=" + format_double(opt.eps);
  if (with_delta) line += " delta=" + format_double(opt.delta);
  if (with_jl_params) {
    line += " eta=" + format_double(opt.eta) + " nu=" + format_double(opt.nu);
  }
  line += " seed=" + std::to_string(opt.seed);
  return line;
}

int run_release_laplacian(const Options& opt) {
  GraphHandle graph;
  check(jlp_graph_read(opt.input.c_str(), graph.out()));
  LaplacianHandle release;
  check(jlp_laplacian_release_create(graph.get(), opt.eps, opt.delta,
                                     opt.eta, opt.nu, opt.seed,
                                     opt.max_bytes, release.out()));
  const std::string matrix_path = opt.output + ".csv";
  const std::string meta_path = opt.output + ".meta";
  check(jlp_laplacian_release_write(release.get(), matrix_path.c_str(),
                                    meta_path.c_str()));
  int n = 0;
  int r = 0;
  double w = 0.0;
  check(jlp_laplacian_release_info(release.get(), &n, &r, &w));
  std::cout << "released sanitized laplacian: n=" << n << " r=" << r
            << " w=" << format_double(w) << " -> " << matrix_path << ", "
            << meta_path << '\n';
  return 0;
}

int run_query_cut(const Options& opt) {
  const std::string matrix_path = opt.input + ".csv";
  const std::string meta_path = opt.input + ".meta";
  LaplacianHandle release;
  check(jlp_laplacian_release_read(matrix_path.c_str(), meta_path.c_str(),
                                   release.out()));
  const CutBatch batch = read_cut_file(opt.queries);
  std::ostringstream out;
  out << "# command=query-cut " << release_provenance(meta_path) << '\n'
      << "s,estimate,tau\n";
  const int query_count = static_cast<int>(batch.offsets.size()) - 1;
  for (int qi = 0; qi < query_count; ++qi) {
    const int begin = batch.offsets[static_cast<size_t>(qi)];
    const int end = batch.offsets[static_cast<size_t>(qi) + 1];
    double answer = 0.0;
    check(jlp_cut_query(release.get(), batch.members.data() + begin,
                        end - begin, &answer));
    double tau = 0.0;
    check(jlp_cut_query_tau(release.get(), end - begin, &tau));
    out << (end - begin) << ',' << format_double(answer) << ','
        << format_double(tau) << '\n';
  }
  write_text_file(opt.output, out.str());
  std::cout << "answered " << query_count << " cut queries -> " << opt.output
            << '\n';
  return 0;
}

int run_release_covariance(const Options& opt) {
  MatrixHandle data;
  check(jlp_matrix_read(opt.input.c_str(), data.out()));
  CovarianceHandle release;
  check(jlp_covariance_release_create(data.get(), opt.eps, opt.delta,
                                      opt.eta, opt.nu, opt.seed,
                                      opt.max_bytes, release.out()));
  const std::string matrix_path = opt.output + ".csv";
  const std::string meta_path = opt.output + ".meta";
  check(jlp_covariance_release_write(release.get(), matrix_path.c_str(),
                                     meta_path.c_str()));
  int n = 0;
  int d = 0;
  double w = 0.0;
  check(jlp_covariance_release_info(release.get(), &n, &d, &w));
  std::cout << "released sanitized covariance: n=" << n << " d=" << d
            << " w=" << format_double(w) << " -> " << matrix_path << ", "
            << meta_path << '\n';
  return 0;
}

int run_query_variance(const Options& opt) {
  const std::string matrix_path = opt.input + ".csv";
  const std::string meta_path = opt.input + ".meta";
  CovarianceHandle release;
  check(jlp_covariance_release_read(matrix_path.c_str(), meta_path.c_str(),
                                    release.out()));
  const std::vector<std::vector<double>> directions =
      read_direction_file(opt.queries);
  double tau = 0.0;
  check(jlp_direction_query_tau(release.get(), &tau));
  std::ostringstream out;
  out << "# command=query-variance " << release_provenance(meta_path) << '\n'
      << "estimate,tau\n";
  for (const std::vector<double>& x : directions) {
    double answer = 0.0;
    check(jlp_direction_query(release.get(), x.data(),
                              static_cast<int>(x.size()), &answer));
    out << format_double(answer) << ',' << format_double(tau) << '\n';
  }
  write_text_file(opt.output, out.str());
  std::cout << "answered " << directions.size() << " direction queries -> "
            << opt.output << '\n';
  return 0;
}

int run_release_mean(const Options& opt) {
  MatrixHandle data;
  check(jlp_matrix_read(opt.input.c_str(), data.out()));
  check(jlp_mean_release_write(data.get(), opt.eps, opt.delta, opt.seed,
                               opt.output.c_str()));
  std::cout << "released noisy mean -> " << opt.output << '\n';
  return 0;
}

int run_rr_release(const Options& opt) {
  GraphHandle graph;
  check(jlp_graph_read(opt.input.c_str(), graph.out()));
  RrHandle release;
  check(jlp_rr_release_create(graph.get(), opt.eps, opt.seed,
                              release.out()));
  std::string header = privacy_provenance("rr-release", opt, false, false);
  header += opt.nonnegative ? " nonnegative=1" : " nonnegative=0";
  check(jlp_rr_release_write(release.get(), opt.output.c_str(),
                             opt.nonnegative ? 1 : 0, header.c_str()));
  std::cout << "released randomized-response graph -> " << opt.output
            << '\n';
  return 0;
}

int run_baseline_laplace(const Options& opt) {
  GraphHandle graph;
  check(jlp_graph_read(opt.input.c_str(), graph.out()));
  const CutBatch batch = read_cut_file(opt.queries);
  const int query_count = static_cast<int>(batch.offsets.size()) - 1;
  std::vector<double> answers(static_cast<size_t>(query_count), 0.0);
  check(jlp_laplace_cut_batch(graph.get(), batch.members.data(),
                              batch.offsets.data(), query_count, opt.eps,
                              opt.seed, answers.data()));
  std::ostringstream out;
  out << "# " << privacy_provenance("baseline-laplace", opt, false, false) << '\n'
      << "s,estimate\n";
  for (int qi = 0; qi < query_count; ++qi) {
    const int s = batch.offsets[static_cast<size_t>(qi) + 1] -
                  batch.offsets[static_cast<size_t>(qi)];
    out << s << ',' << format_double(answers[static_cast<size_t>(qi)])
        << '\n';
  }
  write_text_file(opt.output, out.str());
  std::cout << "answered " << query_count << " cut queries -> " << opt.output
            << '\n';
  return 0;
}

int run_audit(const Options& opt, bool covariance) {
  OwnedString report;
  int all_passed = 0;
  const int csv = opt.format == "csv" ? 1 : 0;
  if (covariance) {
    check(jlp_audit_covariance(opt.eps, opt.delta, opt.eta, opt.nu,
                               opt.cov_pairs, opt.rows, opt.cols, opt.trials,
                               opt.seed, csv, report.out(), &all_passed));
  } else {
    check(jlp_audit_graph(opt.eps, opt.delta, opt.eta, opt.nu, opt.pairs,
                          opt.desk_n, opt.trials, opt.seed, csv,
                          report.out(), &all_passed));
  }
  std::ostringstream out;
  out << "# " << privacy_provenance(
             covariance ? "audit-covariance" : "audit-graph", opt, true,
             true);
  if (covariance) {
    out << " pairs=" << opt.cov_pairs << " rows=" << opt.rows
        << " cols=" << opt.cols;
  } else {
    out << " pairs=" << opt.pairs << " desk_n=" << opt.desk_n;
  }
  out << " trials=" << opt.trials << '\n' << report.get();
  if (opt.output.empty()) {
    std::cout << out.str();
  } else {
    write_text_file(opt.output, out.str());
  }
  std::cout << (all_passed != 0 ? "audit passed" : "audit FAILED") << '\n';
  return all_passed != 0 ? 0 : JLP_ERR_CHECK_FAILED;
}

int run_demo_univariate(const Options& opt) {
  std::vector<int> bits;
  for (const std::string& line : read_data_lines(opt.input)) {
    std::istringstream fields(line);
    int bit = 0;
    while (fields >> bit) bits.push_back(bit);
    if (!fields.eof()) {
      die_message(JLP_ERR_INGESTION,
                  opt.input + ": bad bit line '" + line + "'");
    }
  }
  double estimate = 0.0;
  double true_count = 0.0;
  check(jlp_univariate_demo(bits.data(), static_cast<int>(bits.size()),
                            opt.eps, opt.delta, opt.eta, opt.nu, opt.seed,
                            &estimate, &true_count));
  int r = 0;
  double w = 0.0;
  check(jlp_laplacian_params(opt.eps, opt.delta, opt.eta, opt.nu,
                             static_cast<int>(bits.size()), &r, &w, nullptr,
                             nullptr));
  std::ostringstream out;
  out << "# " << privacy_provenance("demo-univariate", opt, true, true)
      << " n=" << bits.size() << '\n'
      << "estimate=" << format_double(estimate) << '\n'
      << "r=" << r << '\n'
      << "w=" << format_double(w) << '\n';
  if (opt.output.empty()) {
    std::cout << out.str();
  } else {
    write_text_file(opt.output, out.str());
    std::cout << "estimated bit count " << format_double(estimate) << " -> "
              << opt.output << '\n';
  }
  return 0;
}

int run_bench(const Options& opt) {
  OwnedString csv;
  check(jlp_bench_sweep(opt.bench_n, opt.bench_p, opt.eps, opt.delta,
                        opt.eta, opt.nu, opt.cut_sizes.data(),
                        static_cast<int>(opt.cut_sizes.size()),
                        opt.bench_seeds, opt.cuts_per_size, opt.seed,
                        opt.max_bytes, csv.out()));
  std::ostringstream out;
  out << "# " << privacy_provenance("bench", opt, true, true)
      << " n=" << opt.bench_n << " p=" << format_double(opt.bench_p)
      << " cut_sizes=";
  for (size_t i = 0; i < opt.cut_sizes.size(); ++i) {
    if (i > 0) out << '|';
    out << opt.cut_sizes[i];
  }
  out << " seeds=" << opt.bench_seeds
      << " cuts_per_size=" << opt.cuts_per_size << '\n'
      << csv.get();
  if (opt.output.empty()) {
    std::cout << out.str();
  } else {
    write_text_file(opt.output, out.str());
    std::cout << "benchmark sweep complete -> " << opt.output << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "jlp — differentially private graph and covariance releases via "
      "Johnson-Lindenstrauss sketches"};
  app.require_subcommand(1);

  Options opt;

  const auto add_privacy_flags = [&](CLI::App* sub, bool jl_params) {
    sub->add_option("--eps", opt.eps, "privacy budget epsilon")->required();
    sub->add_option("--delta", opt.delta, "privacy budget delta")
        ->required();
    if (jl_params) {
      sub->add_option("--eta", opt.eta,
                      "multiplicative sketch accuracy in (0, 1/2]")
          ->required();
      sub->add_option("--nu", opt.nu, "sketch failure probability in (0,1)")
          ->required();
    }
  };
  const auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", opt.seed,
                    "64-bit seed; reruns reproduce outputs byte for byte")
        ->required();
  };
  const auto add_max_bytes = [&](CLI::App* sub) {
    sub->add_option("--max-bytes", opt.max_bytes,
                    "allocation budget for sketch buffers (bytes)");
  };

  CLI::App* release_laplacian = app.add_subcommand(
      "release-laplacian",
      "Release a sanitized graph Laplacian from an edge list");
  add_privacy_flags(release_laplacian, true);
  add_seed(release_laplacian);
  add_max_bytes(release_laplacian);
  release_laplacian
      ->add_option("--input", opt.input, "input graph edge list")
      ->required();
  release_laplacian
      ->add_option("--output", opt.output,
                   "output prefix; writes <prefix>.csv and <prefix>.meta")
      ->required();

  CLI::App* query_cut = app.add_subcommand(
      "query-cut", "Answer cut queries from a released Laplacian");
  query_cut
      ->add_option("--input", opt.input,
                   "release prefix (expects <prefix>.csv and <prefix>.meta)")
      ->required();
  query_cut
      ->add_option("--queries", opt.queries,
                   "cut file: one cut per line, space-separated node ids")
      ->required();
  query_cut->add_option("--output", opt.output, "output CSV")->required();

  CLI::App* release_covariance = app.add_subcommand(
      "release-covariance",
      "Release a sanitized covariance from a CSV data matrix");
  add_privacy_flags(release_covariance, true);
  add_seed(release_covariance);
  add_max_bytes(release_covariance);
  release_covariance
      ->add_option("--input", opt.input, "input data matrix CSV (rows = "
                                         "individuals)")
      ->required();
  release_covariance
      ->add_option("--output", opt.output,
                   "output prefix; writes <prefix>.csv and <prefix>.meta")
      ->required();

  CLI::App* query_variance = app.add_subcommand(
      "query-variance",
      "Answer directional-variance queries from a released covariance");
  query_variance
      ->add_option("--input", opt.input,
                   "release prefix (expects <prefix>.csv and <prefix>.meta)")
      ->required();
  query_variance
      ->add_option("--queries", opt.queries,
                   "direction file: one unit vector per line, "
                   "comma-separated")
      ->required();
  query_variance->add_option("--output", opt.output, "output CSV")
      ->required();

  CLI::App* release_mean = app.add_subcommand(
      "release-mean", "Release a Gaussian-noised row mean of a data matrix");
  add_privacy_flags(release_mean, false);
  add_seed(release_mean);
  release_mean->add_option("--input", opt.input, "input data matrix CSV")
      ->required();
  release_mean->add_option("--output", opt.output, "output CSV")->required();

  CLI::App* rr_release = app.add_subcommand(
      "rr-release", "Randomized-response release of a graph (0 < eps <= 1)");
  rr_release->add_option("--eps", opt.eps, "privacy budget epsilon")
      ->required();
  add_seed(rr_release);
  rr_release->add_option("--input", opt.input, "input graph edge list")
      ->required();
  rr_release->add_option("--output", opt.output, "output edge list")
      ->required();
  rr_release->add_flag("--nonnegative", opt.nonnegative,
                       "write {0,1} weights instead of the signed release");

  CLI::App* baseline_laplace = app.add_subcommand(
      "baseline-laplace", "Answer cut queries with per-query Laplace noise");
  baseline_laplace->add_option("--eps", opt.eps, "privacy budget epsilon")
      ->required();
  add_seed(baseline_laplace);
  baseline_laplace->add_option("--input", opt.input, "input graph edge list")
      ->required();
  baseline_laplace
      ->add_option("--queries", opt.queries,
                   "cut file: one cut per line, space-separated node ids")
      ->required();
  baseline_laplace->add_option("--output", opt.output, "output CSV")
      ->required();

  CLI::App* audit_graph = app.add_subcommand(
      "audit-graph",
      "Check the Laplacian release's privacy bounds numerically");
  add_privacy_flags(audit_graph, true);
  add_seed(audit_graph);
  audit_graph->add_option("--pairs", opt.pairs,
                          "random neighbor pairs to sweep");
  audit_graph->add_option("--desk-n", opt.desk_n,
                          "node count for the deterministic sweep");
  audit_graph->add_option("--trials", opt.trials, "Monte-Carlo trials");
  audit_graph
      ->add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"keyvalue", "csv"}));
  audit_graph->add_option("--output", opt.output,
                          "report file (default: stdout)");

  CLI::App* audit_covariance = app.add_subcommand(
      "audit-covariance",
      "Check the covariance release's privacy bounds numerically");
  add_privacy_flags(audit_covariance, true);
  add_seed(audit_covariance);
  audit_covariance->add_option("--pairs", opt.cov_pairs,
                               "random neighboring matrix pairs to sweep");
  audit_covariance->add_option("--rows", opt.rows, "rows per desk matrix");
  audit_covariance->add_option("--cols", opt.cols, "columns per desk matrix");
  audit_covariance->add_option("--trials", opt.trials, "Monte-Carlo trials");
  audit_covariance
      ->add_option("--format", opt.format, "report format")
      ->check(CLI::IsMember({"keyvalue", "csv"}));
  audit_covariance->add_option("--output", opt.output,
                               "report file (default: stdout)");

  CLI::App* demo_univariate = app.add_subcommand(
      "demo-univariate",
      "Walk one bit-vector count through the full sketch pipeline");
  add_privacy_flags(demo_univariate, true);
  add_seed(demo_univariate);
  demo_univariate
      ->add_option("--input", opt.input,
                   "bit file: whitespace-separated 0/1 entries")
      ->required();
  demo_univariate->add_option("--output", opt.output,
                              "report file (default: stdout)");

  CLI::App* bench = app.add_subcommand(
      "bench",
      "Compare the JL release against baselines on one G(n, p) graph");
  add_privacy_flags(bench, true);
  add_seed(bench);
  add_max_bytes(bench);
  bench->add_option("--n", opt.bench_n, "node count");
  bench->add_option("--p", opt.bench_p, "edge probability");
  bench->add_option("--cut-sizes", opt.cut_sizes, "cut sizes to sweep")
      ->delimiter(',');
  bench->add_option("--bench-seeds", opt.bench_seeds,
                    "independent releases per mechanism");
  bench->add_option("--cuts-per-size", opt.cuts_per_size,
                    "random cuts per size");
  bench->add_option("--output", opt.output, "output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : JLP_ERR_BAD_ARGUMENT;
  }

  if (release_laplacian->parsed()) return run_release_laplacian(opt);
  if (query_cut->parsed()) return run_query_cut(opt);
  if (release_covariance->parsed()) return run_release_covariance(opt);
  if (query_variance->parsed()) return run_query_variance(opt);
  if (release_mean->parsed()) return run_release_mean(opt);
  if (rr_release->parsed()) return run_rr_release(opt);
  if (baseline_laplace->parsed()) return run_baseline_laplace(opt);
  if (audit_graph->parsed()) return run_audit(opt, false);
  if (audit_covariance->parsed()) return run_audit(opt, true);
  if (demo_univariate->parsed()) return run_demo_univariate(opt);
  if (bench->parsed()) return run_bench(opt);
  return JLP_ERR_BAD_ARGUMENT;
}
