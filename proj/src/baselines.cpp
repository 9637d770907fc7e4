#include "jlp/baselines.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "jlp/errors.hpp"
#include "jlp/io.hpp"

namespace jlp {

double sample_laplace(Xoshiro256pp& rng, double scale) {
  const double u = rng.next_double_open() - 0.5;
  return -scale * std::copysign(1.0, u) * std::log1p(-2.0 * std::abs(u));
}

double laplace_cut(const WeightedGraph& g, const CutQuery& q, double eps,
                   uint64_t seed) {
  if (!(eps > 0.0)) {
    fail(ErrorCode::parameter_range, "laplace_cut: eps must be > 0");
  }
  const double truth = cut_value(g, q);
  Xoshiro256pp rng(seed);
  return truth + sample_laplace(rng, 1.0 / eps);
}

double noisy_edge_total(const WeightedGraph& g, double eps, uint64_t seed) {
  if (!(eps > 0.0)) {
    fail(ErrorCode::parameter_range, "noisy_edge_total: eps must be > 0");
  }
  Xoshiro256pp rng(seed);
  return g.total_weight() + sample_laplace(rng, 1.0 / eps);
}

RrGraph randomized_response_release(const WeightedGraph& g, double eps,
                                    uint64_t seed) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    fail(ErrorCode::parameter_range,
         "randomized response: eps must be in (0,1] so sign "
         "probabilities stay in [0,1], got " +
             io::format_double(eps));
  }
  const int n = g.node_count();
  if (n < 2) {
    fail(ErrorCode::bad_argument, "randomized response: need n >= 2");
  }
  RrGraph out;
  out.n = n;
  out.eps = eps;
  out.seed = seed;
  out.signs.resize(static_cast<size_t>(g.pair_count()));
  Xoshiro256pp rng(seed);
  size_t k = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++k) {
      const double p_plus = (1.0 + eps * g.weight(u, v)) / 2.0;
      out.signs[k] = rng.next_double() < p_plus ? int8_t{1} : int8_t{-1};
    }
  }
  return out;
}

double rr_cut_estimate(const RrGraph& h, const CutQuery& q) {
  const int n = h.n;
  const Vector side = indicator(q, n);
  const double s = side.sum();
  if (!(s > 0.0 && s < n)) {
    fail(ErrorCode::bad_argument,
         "cut query: member set must be a proper nonempty subset");
  }
  double total = 0.0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (side[u] != side[v]) {
        total += h.signs[static_cast<size_t>(pair_index(u, v, n))];
      }
    }
  }
  return total / h.eps;
}

WeightedGraph rr_to_nonnegative(const RrGraph& h) {
  WeightedGraph g(h.n);
  for (int u = 0; u < h.n; ++u) {
    for (int v = u + 1; v < h.n; ++v) {
      const int8_t sign = h.signs[static_cast<size_t>(pair_index(u, v, h.n))];
      g.set_weight(u, v, (sign + 1) / 2.0);
    }
  }
  return g;
}

void write_rr_edge_list(const std::string& path, const RrGraph& h,
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
  out << "n " << h.n << '\n';
  for (int u = 0; u < h.n; ++u) {
    for (int v = u + 1; v < h.n; ++v) {
      out << u << ' ' << v << ' '
          << static_cast<int>(
                 h.signs[static_cast<size_t>(pair_index(u, v, h.n))])
          << '\n';
    }
  }
  if (!out) {
    fail(ErrorCode::ingestion, "write failed: " + path);
  }
}

double expected_cut_guess(double m_noisy, int n, const CutQuery& q) {
  if (n < 2) {
    fail(ErrorCode::bad_argument, "expected_cut_guess: need n >= 2");
  }
  const Vector side = indicator(q, n);
  const double s = side.sum();
  if (!(s > 0.0 && s < n)) {
    fail(ErrorCode::bad_argument,
         "cut query: member set must be a proper nonempty subset");
  }
  const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
  return m_noisy / pairs * s * (static_cast<double>(n) - s);
}

}  // namespace jlp
