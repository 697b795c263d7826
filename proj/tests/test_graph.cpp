#include <doctest.h>

#include "graphtrack/graph.hpp"
#include "graphtrack/rng.hpp"

using namespace graphtrack;

TEST_CASE("edge index map: canonical ordering and sizes") {
  EdgeIndexMap map3(3);
  CHECK(map3.max_edges() == 3);
  CHECK(map3.pair_of(0) == std::pair<int, int>{1, 0});
  CHECK(map3.pair_of(1) == std::pair<int, int>{2, 0});
  CHECK(map3.pair_of(2) == std::pair<int, int>{2, 1});

  EdgeIndexMap map2(2);
  CHECK(map2.max_edges() == 1);
  CHECK(map2.pair_of(0) == std::pair<int, int>{1, 0});

  CHECK(EdgeIndexMap(20).max_edges() == 190);
  CHECK_THROWS_AS(EdgeIndexMap(1), std::invalid_argument);
}

TEST_CASE("edge index map: round trip is the identity") {
  for (int n : {2, 3, 5, 11, 40}) {
    EdgeIndexMap map(n);
    for (int m = 0; m < map.max_edges(); ++m) {
      auto [a, b] = map.pair_of(m);
      CHECK(b < a);
      CHECK(a < n);
      CHECK(map.index_of(a, b) == m);
      CHECK(map.index_of(b, a) == m);
    }
  }
}

TEST_CASE("incidence matrix: one +1 and one -1 per column") {
  EdgeIndexMap map2(2);
  Matrix b2 = build_incidence(map2);
  CHECK(b2(0, 0) == 1.0);
  CHECK(b2(1, 0) == -1.0);

  EdgeIndexMap map(3);
  Matrix b = build_incidence(map);
  Matrix expected(3, 3);
  expected << 1, 1, 0, -1, 0, 1, 0, -1, -1;
  CHECK((b - expected).cwiseAbs().maxCoeff() == 0.0);

  EdgeIndexMap map7(7);
  Matrix b7 = build_incidence(map7);
  for (int m = 0; m < map7.max_edges(); ++m) {
    CHECK(b7.col(m).sum() == 0.0);
    CHECK(b7.col(m).cwiseAbs().sum() == 2.0);
  }
}

TEST_CASE("laplacian: unit triangle, zero weights, single edge") {
  EdgeIndexMap map(3);
  Matrix b = build_incidence(map);

  Matrix tri = laplacian_from_weights(b, Vector::Ones(3));
  Matrix expected(3, 3);
  expected << 2, -1, -1, -1, 2, -1, -1, -1, 2;
  CHECK((tri - expected).cwiseAbs().maxCoeff() == 0.0);

  CHECK(laplacian_from_weights(b, Vector::Zero(3)).cwiseAbs().maxCoeff() == 0.0);

  Vector single(3);
  single << 2, 0, 0;
  Matrix l = laplacian_from_weights(b, single);
  Matrix exp2(3, 3);
  exp2 << 2, -2, 0, -2, 2, 0, 0, 0, 0;
  CHECK((l - exp2).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(laplacian_from_weights(b, Vector::Ones(5)),
                  std::invalid_argument);
}

TEST_CASE("laplacian matches the dense product and its invariants") {
  Rng rng(7);
  for (int n : {3, 6, 12}) {
    EdgeIndexMap map(n);
    Matrix b = build_incidence(map);
    Vector x(map.max_edges());
    for (int m = 0; m < map.max_edges(); ++m) x[m] = 2.0 * rng.uniform();

    Matrix l = laplacian_from_weights(b, x);
    Matrix dense = b * x.asDiagonal() * b.transpose();
    CHECK((l - dense).cwiseAbs().maxCoeff() < 1e-14);

    // symmetric, zero row sums
    CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);

    // PSD for nonnegative weights
    Eigen::SelfAdjointEigenSolver<Matrix> eig(l);
    CHECK(eig.eigenvalues().minCoeff() >
          -1e-12 * std::max(1.0, l.cwiseAbs().maxCoeff()));

    // weights recovered from off-diagonal entries
    for (int m = 0; m < map.max_edges(); ++m) {
      auto [a, c] = map.pair_of(m);
      CHECK(-l(a, c) == doctest::Approx(x[m]).epsilon(1e-14));
    }
  }
}

TEST_CASE("laplacian algebra holds for signed weights too") {
  Rng rng(11);
  EdgeIndexMap map(5);
  Matrix b = build_incidence(map);
  Vector x(map.max_edges());
  for (int m = 0; m < map.max_edges(); ++m) x[m] = rng.normal();
  Matrix l = laplacian_from_weights(b, x);
  CHECK((l - l.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("laplacian is invariant to incidence column sign flips") {
  Rng rng(13);
  EdgeIndexMap map(6);
  Matrix b = build_incidence(map);
  Vector x(map.max_edges());
  for (int m = 0; m < map.max_edges(); ++m) x[m] = rng.uniform();

  Matrix flipped = b;
  for (int m = 0; m < map.max_edges(); m += 2) flipped.col(m) *= -1.0;
  Matrix l1 = laplacian_from_weights(b, x);
  Matrix l2 = laplacian_from_weights(flipped, x);
  CHECK((l1 - l2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("support_of uses a strict threshold") {
  Vector x(3);
  x << 0.05, 0.2, 1.0;
  CHECK(support_of(x, 0.1) == std::vector<int>{1, 2});
  CHECK(support_of(Vector::Zero(4), 0.1).empty());

  Vector tiny(3);
  tiny << 0.0, 1e-12, 1.0;
  CHECK(support_of(tiny, 0.0) == std::vector<int>{1, 2});
  CHECK_THROWS_AS(support_of(x, -0.5), std::invalid_argument);
}
