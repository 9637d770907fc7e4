#include <cmath>
#include <vector>

#include "doctest.h"
#include "jlp/errors.hpp"
#include "jlp/graph.hpp"
#include "jlp/linalg.hpp"
#include "jlp/rng.hpp"
#include "test_util.hpp"

using jlp::CutQuery;
using jlp::ErrorCode;
using jlp::Matrix;
using jlp::NeighborPair;
using jlp::Vector;
using jlp::WeightedGraph;
using test_util::TempDir;

TEST_CASE("pair_index enumerates unordered pairs lexicographically") {
  const int n = 7;
  int expected = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) CHECK_EQ(jlp::pair_index(u, v, n), expected++);
  CHECK_EQ(expected, n * (n - 1) / 2);
  CHECK_EQ(jlp::pair_index(0, 1, n), 0);
  CHECK_EQ(jlp::pair_index(n - 2, n - 1, n), n * (n - 1) / 2 - 1);
}

TEST_CASE("weighted graph stores symmetric weights and validates input") {
  WeightedGraph g(4);
  CHECK_EQ(g.node_count(), 4);
  CHECK_EQ(g.pair_count(), 6);
  CHECK_EQ(g.weight(1, 3), 0.0);  // absent pair means weight 0
  g.set_weight(1, 3, 0.25);
  CHECK_EQ(g.weight(1, 3), 0.25);
  CHECK_EQ(g.weight(3, 1), 0.25);
  g.set_weight(3, 1, 0.5);
  CHECK_EQ(g.weight(1, 3), 0.5);
  CHECK_EQ(g.total_weight(), 0.5);

  CHECK_EQ(test_util::code_of([&] { g.set_weight(0, 1, 1.5); }),
           static_cast<int>(ErrorCode::bad_argument));
  CHECK_EQ(test_util::code_of([&] { g.set_weight(0, 1, -0.1); }),
           static_cast<int>(ErrorCode::bad_argument));
  CHECK_EQ(test_util::code_of([&] { g.set_weight(2, 2, 0.5); }),
           static_cast<int>(ErrorCode::bad_argument));
  CHECK_EQ(test_util::code_of([&] { g.set_weight(0, 4, 0.5); }),
           static_cast<int>(ErrorCode::bad_argument));

  const WeightedGraph k4 = WeightedGraph::complete(4);
  CHECK_EQ(k4.total_weight(), 6.0);
  CHECK_EQ(k4.weight(2, 3), 1.0);
}

TEST_CASE("make_cut_query sorts and validates the member set") {
  const CutQuery q = jlp::make_cut_query({3, 0, 2}, 5);
  CHECK_EQ(q.members, std::vector<int>{0, 2, 3});
  const Vector ind = jlp::indicator(q, 5);
  CHECK_EQ(ind.sum(), 3.0);
  CHECK_EQ(ind[1], 0.0);
  CHECK_EQ(ind[3], 1.0);

  CHECK_EQ(test_util::code_of([] { jlp::make_cut_query({}, 5); }),
           static_cast<int>(ErrorCode::bad_argument));
  CHECK_EQ(test_util::code_of([] { jlp::make_cut_query({0, 1, 2, 3, 4}, 5); }),
           static_cast<int>(ErrorCode::bad_argument));
  CHECK_EQ(test_util::code_of([] { jlp::make_cut_query({1, 1}, 5); }),
           static_cast<int>(ErrorCode::bad_argument));
  CHECK_EQ(test_util::code_of([] { jlp::make_cut_query({5}, 5); }),
           static_cast<int>(ErrorCode::bad_argument));
  CHECK_EQ(test_util::code_of([] { jlp::make_cut_query({-1}, 5); }),
           static_cast<int>(ErrorCode::bad_argument));
}

TEST_CASE("edge matrix rows carry signed square roots of the weights") {
  WeightedGraph g2(2);
  g2.set_weight(0, 1, 1.0);
  Matrix e = jlp::edge_matrix(g2);
  REQUIRE_EQ(e.rows(), 1);
  CHECK_EQ(e(0, 0), 1.0);
  CHECK_EQ(e(0, 1), -1.0);

  g2.set_weight(0, 1, 0.25);
  e = jlp::edge_matrix(g2);
  CHECK_EQ(e(0, 0), 0.5);
  CHECK_EQ(e(0, 1), -0.5);

  CHECK_EQ(test_util::code_of([] { jlp::edge_matrix(WeightedGraph(1)); }),
           static_cast<int>(ErrorCode::bad_argument));
}

TEST_CASE("E^T E equals the Laplacian") {
  const WeightedGraph k3 = WeightedGraph::complete(3);
  const Matrix e = jlp::edge_matrix(k3);
  REQUIRE_EQ(e.rows(), 3);
  CHECK((e.transpose() * e - jlp::laplacian(k3)).cwiseAbs().maxCoeff() <
        1e-12);

  const WeightedGraph g = jlp::random_weighted_graph(6, 41);
  const Matrix eg = jlp::edge_matrix(g);
  CHECK((eg.transpose() * eg - jlp::laplacian(g)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("Laplacian structure: degrees, kernel, positive semidefiniteness") {
  const Matrix lk3 = jlp::laplacian(WeightedGraph::complete(3));
  for (int i = 0; i < 3; ++i) CHECK_EQ(lk3(i, i), 2.0);
  CHECK_EQ(lk3(0, 1), -1.0);

  CHECK_EQ(jlp::laplacian(WeightedGraph(3)).cwiseAbs().maxCoeff(), 0.0);

  const WeightedGraph g = jlp::random_weighted_graph(8, 42);
  const Matrix l = jlp::laplacian(g);
  CHECK((l * Vector::Ones(8)).cwiseAbs().maxCoeff() < 1e-12);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(l);
  CHECK(eig.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("Laplacian quadratic forms are monotone in single weights") {
  WeightedGraph g = jlp::random_weighted_graph(6, 43);
  g.set_weight(1, 4, 0.2);
  WeightedGraph g_up = g;
  g_up.set_weight(1, 4, 0.9);
  const Matrix l = jlp::laplacian(g);
  const Matrix l_up = jlp::laplacian(g_up);
  jlp::NormalSampler sampler(5);
  for (int k = 0; k < 20; ++k) {
    Vector x(6);
    for (int i = 0; i < 6; ++i) x[i] = sampler.next();
    CHECK(x.dot(l_up * x) >= x.dot(l * x) - 1e-12);
  }
}

TEST_CASE("cut_value equals both the direct sum and the quadratic form") {
  const WeightedGraph k3 = WeightedGraph::complete(3);
  CHECK_EQ(jlp::cut_value(k3, jlp::make_cut_query({0}, 3)), 2.0);

  WeightedGraph g3(3);
  g3.set_weight(0, 1, 0.5);
  CHECK_EQ(jlp::cut_value(g3, jlp::make_cut_query({0}, 3)), 0.5);

  const WeightedGraph g = jlp::random_weighted_graph(6, 44);
  const Matrix l = jlp::laplacian(g);
  const CutQuery q = jlp::make_cut_query({0, 3, 4}, 6);
  const Vector ind = jlp::indicator(q, 6);
  const double direct = jlp::cut_value(g, q);
  CHECK_EQ(direct, doctest::Approx(ind.dot(l * ind)).epsilon(1e-12));

  // Phi(S) = Phi(complement of S).
  const CutQuery qc = jlp::make_cut_query({1, 2, 5}, 6);
  CHECK_EQ(direct, doctest::Approx(jlp::cut_value(g, qc)).epsilon(1e-12));
}

TEST_CASE("translate_weights applies the affine map and checks its range") {
  WeightedGraph g(3);
  g.set_weight(0, 1, 1.0);
  g.set_weight(0, 2, 0.5);
  const WeightedGraph h = jlp::translate_weights(g, 0.2);
  CHECK_EQ(h.weight(0, 1), doctest::Approx(1.0).epsilon(1e-15));
  CHECK_EQ(h.weight(0, 2), doctest::Approx(0.6).epsilon(1e-15));
  CHECK_EQ(h.weight(1, 2), doctest::Approx(0.2).epsilon(1e-15));

  const WeightedGraph h1 = jlp::translate_weights(g, 0.1);
  CHECK_EQ(h1.weight(1, 2), doctest::Approx(0.1).epsilon(1e-15));

  for (double bad : {0.0, 0.5, 0.6, -0.1}) {
    CHECK_EQ(test_util::code_of([&] { jlp::translate_weights(g, bad); }),
             static_cast<int>(ErrorCode::parameter_range));
  }
}

TEST_CASE("translation is the convex combination of K_n and G Laplacians") {
  const WeightedGraph g = jlp::random_weighted_graph(7, 45);
  const double t = 0.3;
  const Matrix lhs = jlp::laplacian(jlp::translate_weights(g, t));
  const Matrix rhs = t * jlp::laplacian(WeightedGraph::complete(7)) +
                     (1.0 - t) * jlp::laplacian(g);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("translated graphs have eigenvalue floor w and a 1-dim kernel") {
  const WeightedGraph g = jlp::random_graph(12, 0.4, 46);
  const double t = 0.3;
  const Matrix l = jlp::laplacian(jlp::translate_weights(g, t));
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(l);
  CHECK(std::abs(eig.eigenvalues()[0]) < 1e-9);        // kernel eigenvalue
  CHECK(eig.eigenvalues()[1] >= t * 12 - 1e-9);        // floor w = t*n
  const Vector ones = Vector::Ones(12) / std::sqrt(12.0);
  CHECK(std::abs(std::abs(eig.eigenvectors().col(0).dot(ones)) - 1.0) < 1e-9);
}

TEST_CASE("random graph generators are deterministic and calibrated") {
  const WeightedGraph a = jlp::random_graph(20, 0.5, 47);
  const WeightedGraph b = jlp::random_graph(20, 0.5, 47);
  const WeightedGraph c = jlp::random_graph(20, 0.5, 48);
  CHECK((a.weight_matrix() - b.weight_matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.weight_matrix() - c.weight_matrix()).cwiseAbs().maxCoeff() > 0.0);

  for (int u = 0; u < 20; ++u)
    for (int v = u + 1; v < 20; ++v) {
      const double w = a.weight(u, v);
      CHECK((w == 0.0 || w == 1.0));
    }

  CHECK_EQ(jlp::random_graph(10, 0.0, 1).total_weight(), 0.0);
  CHECK_EQ(jlp::random_graph(10, 1.0, 1).total_weight(), 45.0);

  // C(100,2) = 4950 trials at p = 0.3: 3 sigma is about 0.02.
  const WeightedGraph er = jlp::random_graph(100, 0.3, 49);
  CHECK_EQ(er.total_weight() / 4950.0, doctest::Approx(0.3).epsilon(0.1));

  const WeightedGraph w1 = jlp::random_weighted_graph(15, 50);
  const WeightedGraph w2 = jlp::random_weighted_graph(15, 50);
  CHECK((w1.weight_matrix() - w2.weight_matrix()).cwiseAbs().maxCoeff() ==
        0.0);
  for (int u = 0; u < 15; ++u)
    for (int v = u + 1; v < 15; ++v) {
      CHECK(w1.weight(u, v) >= 0.0);
      CHECK(w1.weight(u, v) < 1.0);
    }
}

TEST_CASE("random neighbor pairs differ on exactly one pair, upward") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const NeighborPair pair = jlp::random_neighbor_pair(9, seed);
    REQUIRE(pair.a < pair.b);
    int diffs = 0;
    for (int u = 0; u < 9; ++u)
      for (int v = u + 1; v < 9; ++v) {
        const double gap = pair.g_prime.weight(u, v) - pair.g.weight(u, v);
        if (gap != 0.0) {
          ++diffs;
          CHECK_EQ(u, pair.a);
          CHECK_EQ(v, pair.b);
          CHECK_EQ(gap, doctest::Approx(pair.delta).epsilon(1e-15));
        }
      }
    CHECK(pair.delta >= 0.0);
    CHECK(pair.delta <= 1.0);
    CHECK((diffs == 1 || pair.delta == 0.0));
    CHECK_EQ(pair.w_over_n, 0.0);
  }
}

TEST_CASE("extreme pair and pair translation") {
  const NeighborPair raw = jlp::extreme_neighbor_pair(8);
  CHECK_EQ(raw.g.total_weight(), 0.0);
  CHECK_EQ(raw.g_prime.total_weight(), 1.0);
  CHECK_EQ(raw.g_prime.weight(0, 1), 1.0);
  CHECK_EQ(raw.delta, 1.0);

  const double t = 0.3;
  const NeighborPair tp = jlp::translate_pair(raw, t);
  CHECK_EQ(tp.w_over_n, t);
  CHECK_EQ(tp.g.weight(0, 1), doctest::Approx(t).epsilon(1e-15));
  CHECK_EQ(tp.g_prime.weight(0, 1), 1.0);
  CHECK_EQ(tp.g.weight(4, 6), doctest::Approx(t).epsilon(1e-15));
  // delta scales by (1 - t) under the affine translation.
  CHECK_EQ(tp.delta, doctest::Approx((1.0 - t) * raw.delta).epsilon(1e-12));
}

TEST_CASE("edge-list files round-trip bit-exactly") {
  TempDir dir;
  WeightedGraph g = jlp::random_weighted_graph(9, 51);
  g.set_weight(0, 1, 0.0);  // zero weights are omitted from the file
  const std::string path = dir.file("g.txt");
  jlp::write_edge_list(path, g, "scratch graph");
  const WeightedGraph back = jlp::read_edge_list(path);
  CHECK_EQ(back.node_count(), 9);
  CHECK((back.weight_matrix() - g.weight_matrix()).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK_EQ(test_util::read_text(path).rfind("# scratch graph", 0), 0);
}

TEST_CASE("edge-list ingestion rejects malformed files") {
  TempDir dir;
  const std::string path = dir.file("g.txt");
  const auto expect_ingestion = [&](const std::string& content) {
    test_util::write_text(path, content);
    CHECK_EQ(test_util::code_of([&] { jlp::read_edge_list(path); }),
             static_cast<int>(ErrorCode::ingestion));
  };
  expect_ingestion("0 1 0.5\n");             // missing "n <count>" header
  expect_ingestion("n 3\n1 0 0.5\n");        // u >= v
  expect_ingestion("n 3\n0 1 0.5\n0 1 0.25\n");  // duplicate pair
  expect_ingestion("n 3\n0 1 1.5\n");        // weight out of [0,1]
  expect_ingestion("n 3\n0 1 abc\n");        // malformed weight
  expect_ingestion("n 3\n0 5 0.5\n");        // node out of range
  expect_ingestion("n 0\n");                 // node count below one

  test_util::write_text(path, "n 3\n");
  CHECK_EQ(jlp::read_edge_list(path).total_weight(), 0.0);  // edgeless is fine
  test_util::write_text(path, "n 1\n");
  CHECK_EQ(jlp::read_edge_list(path).node_count(), 1);  // degenerate but valid
}
