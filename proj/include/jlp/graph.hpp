#ifndef JLP_GRAPH_HPP
#define JLP_GRAPH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jlp/linalg.hpp"

namespace jlp {

// Undirected weighted graph on nodes 0..n-1 with edge weights in [0,1].
// Weight 0 means "no edge"; self-loops are not representable. Immutable
// in spirit: mutate only while assembling, then share freely.
class WeightedGraph {
 public:
  explicit WeightedGraph(int n);
  static WeightedGraph complete(int n);

  int node_count() const { return n_; }
  // Number of unordered node pairs, C(n,2).
  int pair_count() const { return n_ * (n_ - 1) / 2; }
  double weight(int u, int v) const;
  // Rejects out-of-range weights and invalid node pairs.
  void set_weight(int u, int v, double w);
  // Sum of all pair weights (the graph's total edge weight).
  double total_weight() const;
  const Matrix& weight_matrix() const { return weights_; }

 private:
  void check_pair(int u, int v) const;

  int n_;
  Matrix weights_;  // symmetric, zero diagonal
};

// Proper nonempty subset S of the nodes, stored sorted and duplicate-free.
struct CutQuery {
  std::vector<int> members;
};

// Validates 0 < |S| < n, indices in range, no duplicates; sorts members.
CutQuery make_cut_query(std::vector<int> members, int n);

// 0/1 indicator vector of the query's member set.
Vector indicator(const CutQuery& q, int n);

// Lexicographic index of the unordered pair (u,v), u<v, among all C(n,2)
// pairs: (0,1),(0,2),...,(0,n-1),(1,2),... This fixes the edge-matrix row
// order and every per-edge sample stream in the library.
int pair_index(int u, int v, int n);

// Two graphs identical except on edge (a,b); delta = g_prime's weight
// minus g's weight, |delta| <= 1. w_over_n is the translation parameter
// both graphs have been passed through, or 0 if they are raw.
struct NeighborPair {
  WeightedGraph g;
  WeightedGraph g_prime;
  int a = 0;
  int b = 1;
  double delta = 0.0;
  double w_over_n = 0.0;
};

// Signed square-root incidence matrix: C(n,2) x n, one row per pair
// (u,v) in lexicographic order with +sqrt(w) at column u and -sqrt(w)
// at column v. Requires n >= 2.
Matrix edge_matrix(const WeightedGraph& g);

// Graph Laplacian: degree on the diagonal, -w off-diagonal. Symmetric
// PSD with L·1 = 0; equals edge_matrix(g)^T · edge_matrix(g).
Matrix laplacian(const WeightedGraph& g);

// Exact weighted cut: sum of w_{u,v} over u in S, v outside S.
double cut_value(const WeightedGraph& g, const CutQuery& q);

// Affine weight translation w <- w_over_n + (1 - w_over_n)·w applied to
// every pair, forcing all pair weights into [w_over_n, 1] and lifting
// every nonzero Laplacian eigenvalue to at least w_over_n·n. Requires
// 0 < w_over_n < 1/2.
WeightedGraph translate_weights(const WeightedGraph& g, double w_over_n);

// Erdos-Renyi G(n,p): each pair independently gets weight 1 with
// probability p. Deterministic in seed.
WeightedGraph random_graph(int n, double p, uint64_t seed);

// Every pair weight drawn uniformly from [0,1). Deterministic in seed.
WeightedGraph random_weighted_graph(int n, uint64_t seed);

// Random untranslated neighbor pair: a common random weighted base,
// a uniform pair (a,b), and g_prime's weight raised to
// min(base + u, 1) for uniform u in [0,1). delta is the realized
// difference, always in [0,1].
NeighborPair random_neighbor_pair(int n, uint64_t seed);

// The worst-case pair: g empty (edge (0,1) weight 0), g_prime with edge
// (0,1) at weight 1. After translation the differing edge sits at
// w_over_n in g and 1 in g_prime.
NeighborPair extreme_neighbor_pair(int n);

// Applies translate_weights to both sides and stamps w_over_n.
NeighborPair translate_pair(const NeighborPair& raw, double w_over_n);

// Edge-list file format: first line "n <count>", then one "u v weight"
// line per stored pair with u<v. Duplicate pairs, out-of-range weights,
// and malformed lines are ingestion errors.
WeightedGraph read_edge_list(const std::string& path,
                             size_t max_bytes = size_t{1} << 30);
void write_edge_list(const std::string& path, const WeightedGraph& g,
                     const std::string& header_comment = "");

}  // namespace jlp

#endif  // JLP_GRAPH_HPP
