#ifndef JLP_JL_HPP
#define JLP_JL_HPP

#include <cstdint>

#include "jlp/linalg.hpp"

namespace jlp {

// Sketch dimension parameters: r = ceil(8·ln(2/nu)/eta^2).
struct JlParams {
  double eta = 0.0;
  double nu = 0.0;
  int r = 0;
};

// Computes the sketch row count for a (1±eta) norm guarantee holding
// with probability >= 1-nu. Requires 0 < eta < 1/2 (strict) and
// 0 < nu < 1.
JlParams jl_dim(double eta, double nu);

// r x m matrix of iid N(0,1) entries, fully determined by
// (r, m, seed). Entries are drawn in column-major storage order, so
// for r = 1 the draw order matches the column (edge) stream.
struct GaussianSketch {
  int r = 0;
  Eigen::Index m = 0;
  Matrix entries;
  uint64_t seed = 0;
};

// Materializes the sketch. Refuses allocations whose entry storage
// exceeds max_bytes (budget-exceeded error).
GaussianSketch sample_sketch(int r, Eigen::Index m, uint64_t seed,
                             size_t max_bytes = size_t{1} << 30);

// Exact product entries·x; callers apply their own 1/r scaling.
Vector project(const GaussianSketch& sketch, const Vector& x);

}  // namespace jlp

#endif  // JLP_JL_HPP
