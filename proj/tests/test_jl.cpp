#include <cmath>

#include "doctest.h"
#include "jlp/errors.hpp"
#include "jlp/jl.hpp"
#include "jlp/rng.hpp"
#include "test_util.hpp"

using jlp::ErrorCode;
using jlp::GaussianSketch;
using jlp::Matrix;
using jlp::Vector;

TEST_CASE("jl_dim evaluates the ceiling formula at frozen points") {
  const double nu_2e2 = 2.0 * std::exp(-2.0);  // ln(2/nu) = 2 exactly
  CHECK_EQ(jlp::jl_dim(0.25, nu_2e2).r, 256);
  CHECK_EQ(jlp::jl_dim(0.25, 0.05).r, 473);
  CHECK_EQ(jlp::jl_dim(0.25, 0.01).r, 679);
  CHECK_EQ(jlp::jl_dim(0.1, nu_2e2).r, 1600);

  // Shrinking nu strictly increases r.
  CHECK(jlp::jl_dim(0.25, 0.01).r > jlp::jl_dim(0.25, 0.05).r);

  const jlp::JlParams p = jlp::jl_dim(0.25, 0.05);
  CHECK_EQ(p.eta, 0.25);
  CHECK_EQ(p.nu, 0.05);
}

TEST_CASE("jl_dim rejects parameters outside its valid range") {
  for (auto [eta, nu] : {std::pair{0.5, 0.1},   // eta must be < 1/2 strictly
                         std::pair{0.0, 0.1},
                         std::pair{-0.1, 0.1},
                         std::pair{0.25, 0.0},
                         std::pair{0.25, 1.0}}) {
    CHECK_EQ(test_util::code_of([=] { jlp::jl_dim(eta, nu); }),
             static_cast<int>(ErrorCode::parameter_range));
  }
}

TEST_CASE("sample_sketch is deterministic in (r, m, seed)") {
  const GaussianSketch a = jlp::sample_sketch(2, 3, 42);
  const GaussianSketch b = jlp::sample_sketch(2, 3, 42);
  const GaussianSketch c = jlp::sample_sketch(2, 3, 43);
  CHECK_EQ(a.r, 2);
  CHECK_EQ(a.m, 3);
  CHECK_EQ(a.seed, 42);
  CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.entries - c.entries).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("sketch entries pass N(0,1) moment sanity at scale") {
  const GaussianSketch s = jlp::sample_sketch(1000, 1000, 7);
  const double mean = s.entries.mean();
  const double var =
      (s.entries.array() - mean).square().sum() / (1000.0 * 1000.0);
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("sketch allocation respects the byte budget") {
  // 100x100 doubles = 80000 bytes > 1000.
  CHECK_EQ(test_util::code_of([] { jlp::sample_sketch(100, 100, 1, 1000); }),
           static_cast<int>(ErrorCode::budget_exceeded));
}

TEST_CASE("project is the exact matrix-vector product") {
  const GaussianSketch s = jlp::sample_sketch(4, 6, 11);
  CHECK_EQ(jlp::project(s, Vector::Zero(6)).cwiseAbs().maxCoeff(), 0.0);

  // Identity test hook: forcing the entries to I makes project the
  // identity map.
  GaussianSketch id;
  id.r = 3;
  id.m = 3;
  id.entries = Matrix::Identity(3, 3);
  Vector x(3);
  x << 1.5, -2.0, 0.25;
  CHECK((jlp::project(id, x) - x).cwiseAbs().maxCoeff() == 0.0);

  CHECK_EQ(test_util::code_of([&] { jlp::project(s, Vector::Zero(5)); }),
           static_cast<int>(ErrorCode::bad_argument));
}

TEST_CASE("project is linear") {
  const GaussianSketch s = jlp::sample_sketch(8, 10, 12);
  jlp::NormalSampler sampler(13);
  Vector x(10), y(10);
  for (int i = 0; i < 10; ++i) {
    x[i] = sampler.next();
    y[i] = sampler.next();
  }
  const Vector lhs = jlp::project(s, 2.5 * x - 0.75 * y);
  const Vector rhs = 2.5 * jlp::project(s, x) - 0.75 * jlp::project(s, y);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("JL norm sandwich holds at the advertised failure rate") {
  // r = ceil(8 ln(2/0.01) / 0.0625) = 679 targets failure probability
  // 0.01; over N trials the empirical rate must stay below
  // nu + 3 sqrt(nu/N).
  const jlp::JlParams params = jlp::jl_dim(0.25, 0.01);
  REQUIRE_EQ(params.r, 679);

  jlp::NormalSampler sampler(14);
  Vector x(50);
  for (int i = 0; i < 50; ++i) x[i] = sampler.next();
  const double norm_sq = x.squaredNorm();

  const long trials = 2000;
  long failures = 0;
  for (long trial = 0; trial < trials; ++trial) {
    const GaussianSketch s =
        jlp::sample_sketch(params.r, 50, jlp::derive_seed(777, trial));
    const double estimate = jlp::project(s, x).squaredNorm() / params.r;
    if (estimate < (1.0 - params.eta) * norm_sq ||
        estimate > (1.0 + params.eta) * norm_sq) {
      ++failures;
    }
  }
  const double limit =
      params.nu + 3.0 * std::sqrt(params.nu / static_cast<double>(trials));
  CHECK(static_cast<double>(failures) / trials <= limit);
}
