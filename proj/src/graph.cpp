#include "jlp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "jlp/errors.hpp"
#include "jlp/io.hpp"
#include "jlp/rng.hpp"

namespace jlp {

WeightedGraph::WeightedGraph(int n) : n_(n) {
  if (n < 1) {
    fail(ErrorCode::bad_argument,
         "graph: node count must be >= 1, got " + std::to_string(n));
  }
  weights_ = Matrix::Zero(n, n);
}

WeightedGraph WeightedGraph::complete(int n) {
  WeightedGraph g(n);
  g.weights_.setOnes();
  g.weights_.diagonal().setZero();
  return g;
}

void WeightedGraph::check_pair(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
    fail(ErrorCode::bad_argument,
         "graph: invalid node pair (" + std::to_string(u) + "," +
             std::to_string(v) + ") for n=" + std::to_string(n_));
  }
}

double WeightedGraph::weight(int u, int v) const {
  check_pair(u, v);
  return weights_(u, v);
}

void WeightedGraph::set_weight(int u, int v, double w) {
  check_pair(u, v);
  if (!(w >= 0.0 && w <= 1.0)) {
    fail(ErrorCode::bad_argument,
         "graph: weight must be in [0,1], got " + io::format_double(w));
  }
  weights_(u, v) = w;
  weights_(v, u) = w;
}

double WeightedGraph::total_weight() const {
  return weights_.sum() / 2.0;
}

CutQuery make_cut_query(std::vector<int> members, int n) {
  if (members.empty()) {
    fail(ErrorCode::bad_argument, "cut query: member set is empty");
  }
  std::sort(members.begin(), members.end());
  for (size_t i = 0; i < members.size(); ++i) {
    if (members[i] < 0 || members[i] >= n) {
      fail(ErrorCode::bad_argument,
           "cut query: node " + std::to_string(members[i]) +
               " out of range for n=" + std::to_string(n));
    }
    if (i > 0 && members[i] == members[i - 1]) {
      fail(ErrorCode::bad_argument,
           "cut query: duplicate node " + std::to_string(members[i]));
    }
  }
  if (static_cast<int>(members.size()) >= n) {
    fail(ErrorCode::bad_argument,
         "cut query: member set must be a proper subset of the nodes");
  }
  return CutQuery{std::move(members)};
}

Vector indicator(const CutQuery& q, int n) {
  Vector ind = Vector::Zero(n);
  for (int u : q.members) {
    if (u < 0 || u >= n) {
      fail(ErrorCode::bad_argument, "cut query: node out of range");
    }
    ind[u] = 1.0;
  }
  return ind;
}

int pair_index(int u, int v, int n) {
  if (u > v) std::swap(u, v);
  if (u < 0 || v >= n || u == v) {
    fail(ErrorCode::bad_argument, "pair_index: invalid pair");
  }
  return u * n - u * (u + 1) / 2 + (v - u - 1);
}

Matrix edge_matrix(const WeightedGraph& g) {
  const int n = g.node_count();
  if (n < 2) {
    fail(ErrorCode::bad_argument,
         "edge_matrix: graph needs at least 2 nodes");
  }
  Matrix e = Matrix::Zero(g.pair_count(), n);
  int row = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++row) {
      const double root = std::sqrt(g.weight(u, v));
      e(row, u) = root;
      e(row, v) = -root;
    }
  }
  return e;
}

Matrix laplacian(const WeightedGraph& g) {
  const Matrix& w = g.weight_matrix();
  Matrix l = -w;
  l.diagonal() = w.rowwise().sum();
  return l;
}

double cut_value(const WeightedGraph& g, const CutQuery& q) {
  const int n = g.node_count();
  const Vector side = indicator(q, n);
  const double s = side.sum();
  if (!(s > 0.0 && s < n)) {
    fail(ErrorCode::bad_argument,
         "cut query: member set must be a proper nonempty subset");
  }
  double total = 0.0;
  for (int u = 0; u < n; ++u) {
    if (side[u] == 0.0) continue;
    for (int v = 0; v < n; ++v) {
      if (side[v] == 0.0) total += g.weight_matrix()(u, v);
    }
  }
  return total;
}

WeightedGraph translate_weights(const WeightedGraph& g, double w_over_n) {
  if (!(w_over_n > 0.0 && w_over_n < 0.5)) {
    fail(ErrorCode::parameter_range,
         "translate_weights: requires 0 < w/n < 1/2, got " +
             io::format_double(w_over_n));
  }
  const int n = g.node_count();
  WeightedGraph h(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      h.set_weight(u, v, w_over_n + (1.0 - w_over_n) * g.weight(u, v));
    }
  }
  return h;
}

WeightedGraph random_graph(int n, double p, uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorCode::bad_argument, "random_graph: p must be in [0,1]");
  }
  WeightedGraph g(n);
  Xoshiro256pp rng(seed);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.next_double() < p) g.set_weight(u, v, 1.0);
    }
  }
  return g;
}

WeightedGraph random_weighted_graph(int n, uint64_t seed) {
  WeightedGraph g(n);
  Xoshiro256pp rng(seed);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      g.set_weight(u, v, rng.next_double());
    }
  }
  return g;
}

NeighborPair random_neighbor_pair(int n, uint64_t seed) {
  if (n < 2) {
    fail(ErrorCode::bad_argument, "neighbor pair: need n >= 2");
  }
  Xoshiro256pp rng(seed);
  WeightedGraph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      g.set_weight(u, v, rng.next_double());
    }
  }
  const int a = static_cast<int>(rng.next_u64() % static_cast<uint64_t>(n));
  int b = static_cast<int>(rng.next_u64() % static_cast<uint64_t>(n - 1));
  if (b >= a) ++b;
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);

  WeightedGraph g_prime = g;
  const double base = g.weight(lo, hi);
  const double raised = std::min(base + rng.next_double(), 1.0);
  g_prime.set_weight(lo, hi, raised);

  NeighborPair pair{std::move(g), std::move(g_prime), lo, hi,
                    raised - base, 0.0};
  return pair;
}

NeighborPair extreme_neighbor_pair(int n) {
  if (n < 2) {
    fail(ErrorCode::bad_argument, "neighbor pair: need n >= 2");
  }
  WeightedGraph g(n);
  WeightedGraph g_prime(n);
  g_prime.set_weight(0, 1, 1.0);
  return NeighborPair{std::move(g), std::move(g_prime), 0, 1, 1.0, 0.0};
}

NeighborPair translate_pair(const NeighborPair& raw, double w_over_n) {
  NeighborPair out{translate_weights(raw.g, w_over_n),
                   translate_weights(raw.g_prime, w_over_n), raw.a, raw.b,
                   (1.0 - w_over_n) * raw.delta, w_over_n};
  return out;
}

WeightedGraph read_edge_list(const std::string& path, size_t max_bytes) {
  const std::string content = io::read_file(path, max_bytes);
  std::istringstream lines(content);
  std::string line;
  size_t line_number = 0;
  int n = -1;
  WeightedGraph g(1);
  std::set<std::pair<int, int>> seen;

  auto ingest_error = [&](const std::string& message) {
    fail(ErrorCode::ingestion,
         path + ":" + std::to_string(line_number) + ": " + message);
  };

  while (std::getline(lines, line)) {
    ++line_number;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (n < 0) {
      std::string tag;
      fields >> tag >> n;
      if (tag != "n" || fields.fail() || n < 1) {
        ingest_error("expected header line 'n <node_count>'");
      }
      std::string extra;
      if (fields >> extra) ingest_error("trailing content after header");
      g = WeightedGraph(n);
      continue;
    }
    int u = 0;
    int v = 0;
    double w = 0.0;
    fields >> u >> v >> w;
    if (fields.fail()) ingest_error("expected 'u v weight'");
    std::string extra;
    if (fields >> extra) ingest_error("trailing content after edge");
    if (u >= v) ingest_error("edges require u < v");
    if (u < 0 || v >= n) ingest_error("node index out of range");
    if (!(w >= 0.0 && w <= 1.0)) ingest_error("weight outside [0,1]");
    if (!seen.insert({u, v}).second) ingest_error("duplicate pair");
    g.set_weight(u, v, w);
  }
  if (n < 0) {
    fail(ErrorCode::ingestion, path + ": missing 'n <node_count>' header");
  }
  return g;
}

void write_edge_list(const std::string& path, const WeightedGraph& g,
                     const std::string& header_comment) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(ErrorCode::ingestion, "cannot open for writing: " + path);
  }
  if (!header_comment.empty()) {
    std::istringstream comment_lines(header_comment);
    std::string comment;
    while (std::getline(comment_lines, comment)) out << "# " << comment << '\n';
  }
  const int n = g.node_count();
  out << "n " << n << '\n';
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double w = g.weight(u, v);
      if (w != 0.0) {
        out << u << ' ' << v << ' ' << io::format_double(w) << '\n';
      }
    }
  }
  if (!out) {
    fail(ErrorCode::ingestion, "write failed: " + path);
  }
}

}  // namespace jlp
