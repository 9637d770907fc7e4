#include "jlp/jl.hpp"

#include <cmath>
#include <string>

#include "jlp/errors.hpp"
#include "jlp/io.hpp"
#include "jlp/rng.hpp"

namespace jlp {

JlParams jl_dim(double eta, double nu) {
  if (!(eta > 0.0 && eta < 0.5)) {
    fail(ErrorCode::parameter_range,
         "jl_dim: eta must satisfy 0 < eta < 1/2, got " +
             io::format_double(eta));
  }
  if (!(nu > 0.0 && nu < 1.0)) {
    fail(ErrorCode::parameter_range,
         "jl_dim: nu must satisfy 0 < nu < 1, got " + io::format_double(nu));
  }
  const double raw = 8.0 * std::log(2.0 / nu) / (eta * eta);
  JlParams params;
  params.eta = eta;
  params.nu = nu;
  params.r = static_cast<int>(std::ceil(raw));
  if (params.r < 1) params.r = 1;
  return params;
}

GaussianSketch sample_sketch(int r, Eigen::Index m, uint64_t seed,
                             size_t max_bytes) {
  if (r < 1 || m < 1) {
    fail(ErrorCode::bad_argument, "sample_sketch: r and m must be >= 1");
  }
  const size_t bytes =
      static_cast<size_t>(r) * static_cast<size_t>(m) * sizeof(double);
  if (bytes > max_bytes) {
    fail(ErrorCode::budget_exceeded,
         "sample_sketch: " + std::to_string(bytes) +
             " bytes requested exceeds budget of " +
             std::to_string(max_bytes));
  }
  GaussianSketch sketch;
  sketch.r = r;
  sketch.m = m;
  sketch.seed = seed;
  sketch.entries.resize(r, m);
  NormalSampler sampler(seed);
  double* data = sketch.entries.data();
  const size_t count = static_cast<size_t>(r) * static_cast<size_t>(m);
  for (size_t i = 0; i < count; ++i) data[i] = sampler.next();
  return sketch;
}

Vector project(const GaussianSketch& sketch, const Vector& x) {
  if (x.size() != sketch.m) {
    fail(ErrorCode::bad_argument,
         "project: vector length " + std::to_string(x.size()) +
             " does not match sketch columns " + std::to_string(sketch.m));
  }
  return sketch.entries * x;
}

}  // namespace jlp
