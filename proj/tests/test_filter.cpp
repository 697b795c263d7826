#include <doctest.h>

#include <cmath>

#include "graphtrack/filter.hpp"
#include "graphtrack/rng.hpp"

using namespace graphtrack;

namespace {

PolynomialGraphFilter make_filter(std::initializer_list<double> coeffs) {
  PolynomialGraphFilter f;
  f.coeffs.resize(static_cast<Eigen::Index>(coeffs.size()));
  Eigen::Index i = 0;
  for (double c : coeffs) f.coeffs[i++] = c;
  return f;
}

struct Instance {
  EdgeIndexMap map;
  Matrix incidence;
  Vector weights;
  Vector q;
  Matrix laplacian;
};

Instance random_instance(int n, Rng& rng, double weight_scale = 2.0) {
  EdgeIndexMap map(n);
  Matrix b = build_incidence(map);
  Vector x(map.max_edges());
  for (int m = 0; m < map.max_edges(); ++m) x[m] = weight_scale * rng.uniform();
  Vector q(n);
  for (int i = 0; i < n; ++i) q[i] = rng.normal();
  Matrix lap = laplacian_from_weights(b, x);
  return {map, std::move(b), std::move(x), std::move(q), std::move(lap)};
}

PolynomialGraphFilter random_filter(int order, Rng& rng) {
  PolynomialGraphFilter f;
  f.coeffs.resize(order + 1);
  for (int p = 0; p <= order; ++p) f.coeffs[p] = rng.normal();
  return f;
}

}  // namespace

TEST_CASE("apply_filter basics") {
  Rng rng(3);
  auto inst = random_instance(5, rng);

  // the all-ones vector is in the Laplacian null space
  Vector ones = Vector::Ones(5);
  Vector out = apply_filter(make_filter({1.0, 1.0}), inst.laplacian, ones);
  CHECK((out - ones).cwiseAbs().maxCoeff() < 1e-12);

  // order-0 filter scales the input
  out = apply_filter(make_filter({2.5}), inst.laplacian, inst.q);
  CHECK((out - 2.5 * inst.q).cwiseAbs().maxCoeff() == 0.0);

  // h(L) = L on the unit triangle
  EdgeIndexMap map3(3);
  Matrix b3 = build_incidence(map3);
  Matrix tri = laplacian_from_weights(b3, Vector::Ones(3));
  Vector e0(3);
  e0 << 1, 0, 0;
  Vector lq = apply_filter(make_filter({0.0, 1.0}), tri, e0);
  Vector expected(3);
  expected << 2, -1, -1;
  CHECK((lq - expected).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(apply_filter(make_filter({1.0}), tri, Vector::Ones(4)),
                  std::invalid_argument);
}

TEST_CASE("apply_filter equals the explicit matrix polynomial") {
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto inst = random_instance(6, rng);
    auto filter = random_filter(4, rng);
    Matrix h = filter.coeffs[0] * Matrix::Identity(6, 6);
    Matrix power = Matrix::Identity(6, 6);
    for (int p = 1; p <= 4; ++p) {
      power = inst.laplacian * power;
      h += filter.coeffs[p] * power;
    }
    Vector expected = h * inst.q;
    Vector got = apply_filter(filter, inst.laplacian, inst.q);
    CHECK((got - expected).cwiseAbs().maxCoeff() <
          1e-10 * std::max(1.0, expected.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("jacobian at zero weights reduces to the first-order term") {
  EdgeIndexMap map(4);
  Matrix b = build_incidence(map);
  Vector x = Vector::Zero(map.max_edges());
  Vector q(4);
  q << 1.0, -2.0, 0.5, 3.0;
  auto filter = make_filter({0.3, 1.7, -0.4, 2.2});

  Matrix naive = jacobian_naive(filter, x, b, q);
  Matrix dp = jacobian_dp(filter, map, laplacian_from_weights(b, x), q);
  for (int m = 0; m < map.max_edges(); ++m) {
    Vector expected = filter.coeffs[1] * b.col(m) * b.col(m).dot(q);
    CHECK((naive.col(m) - expected).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((dp.col(m) - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("first-order jacobian equals a1 B diag(B^T q) and ignores x") {
  Rng rng(17);
  auto inst = random_instance(6, rng);
  auto filter = make_filter({0.7, -1.3});
  Matrix expected = -1.3 * inst.incidence *
                    (inst.incidence.transpose() * inst.q).asDiagonal();

  Matrix naive = jacobian_naive(filter, inst.weights, inst.incidence, inst.q);
  Matrix dp = jacobian_dp(filter, inst.map, inst.laplacian, inst.q);
  CHECK((naive - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((dp - expected).cwiseAbs().maxCoeff() < 1e-14);

  // independent of the weights
  Matrix dp_zero =
      jacobian_dp(filter, inst.map, Matrix::Zero(6, 6), inst.q);
  CHECK((dp - dp_zero).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("constant filters have a zero jacobian") {
  Rng rng(19);
  auto inst = random_instance(5, rng);
  auto filter = make_filter({4.2});
  CHECK(jacobian_naive(filter, inst.weights, inst.incidence, inst.q)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(jacobian_dp(filter, inst.map, inst.laplacian, inst.q)
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("dp jacobian matches the naive formula on random instances") {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + rng.uniform_int(0, 8);
    const int order = 1 + rng.uniform_int(0, 5);
    auto inst = random_instance(n, rng);
    auto filter = random_filter(order, rng);
    Matrix naive = jacobian_naive(filter, inst.weights, inst.incidence, inst.q);
    Matrix dp = jacobian_dp(filter, inst.map, inst.laplacian, inst.q);
    const double scale = std::max(1e-300, naive.cwiseAbs().maxCoeff());
    CHECK((naive - dp).cwiseAbs().maxCoeff() / scale < 1e-9);
  }
}

TEST_CASE("jacobian columns match central finite differences") {
  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + rng.uniform_int(0, 2);
    auto inst = random_instance(n, rng);
    auto filter = random_filter(1 + rng.uniform_int(0, 3), rng);
    Matrix jac = jacobian_dp(filter, inst.map, inst.laplacian, inst.q);

    const double step = 1e-6;
    Matrix fd(n, inst.map.max_edges());
    for (int m = 0; m < inst.map.max_edges(); ++m) {
      Vector plus = inst.weights, minus = inst.weights;
      plus[m] += step;
      minus[m] -= step;
      fd.col(m) =
          (apply_filter(filter, laplacian_from_weights(inst.incidence, plus),
                        inst.q) -
           apply_filter(filter, laplacian_from_weights(inst.incidence, minus),
                        inst.q)) /
          (2.0 * step);
    }
    const double scale = std::max(1.0, fd.cwiseAbs().maxCoeff());
    for (int m = 0; m < inst.map.max_edges(); ++m) {
      const double denom =
          std::max(fd.col(m).cwiseAbs().maxCoeff(), 1e-3 * scale);
      CHECK((jac.col(m) - fd.col(m)).cwiseAbs().maxCoeff() / denom < 1e-4);
    }
  }
}

TEST_CASE("node relabeling permutes jacobian rows and columns consistently") {
  Rng rng(31);
  const int n = 6;
  auto inst = random_instance(n, rng);
  auto filter = random_filter(3, rng);

  // permutation of nodes
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);

  Vector xp(inst.map.max_edges());
  for (int m = 0; m < inst.map.max_edges(); ++m) {
    auto [a, b] = inst.map.pair_of(m);
    xp[inst.map.index_of(perm[a], perm[b])] = inst.weights[m];
  }
  Vector qp(n);
  for (int i = 0; i < n; ++i) qp[perm[i]] = inst.q[i];

  Matrix jac = jacobian_dp(filter, inst.map, inst.laplacian, inst.q);
  Matrix jac_p = jacobian_dp(
      filter, inst.map, laplacian_from_weights(inst.incidence, xp), qp);

  for (int m = 0; m < inst.map.max_edges(); ++m) {
    auto [a, b] = inst.map.pair_of(m);
    const int mp = inst.map.index_of(perm[a], perm[b]);
    for (int i = 0; i < n; ++i) {
      CHECK(jac(i, m) == doctest::Approx(jac_p(perm[i], mp)).epsilon(1e-9));
    }
  }
}

TEST_CASE("linear_observation reproduces the filter exactly") {
  SUBCASE("hand example") {
    EdgeIndexMap map(3);
    Matrix b = build_incidence(map);
    Vector q(3);
    q << 1, 0, 0;
    auto [h, c] = linear_observation(0.0, 1.0, b, q);
    Matrix expected(3, 3);
    expected << 1, 1, 0, -1, 0, 0, 0, -1, 0;
    CHECK((h - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK(c.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("a1 = 0 carries no topology information") {
    Rng rng(37);
    auto inst = random_instance(5, rng);
    auto [h, c] = linear_observation(1.5, 0.0, inst.incidence, inst.q);
    CHECK(h.cwiseAbs().maxCoeff() == 0.0);
    CHECK((c - 1.5 * inst.q).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("identity h(x) = Hx + c on random instances") {
    Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      auto inst = random_instance(4 + rng.uniform_int(0, 5), rng);
      const double a0 = rng.normal();
      const double a1 = rng.normal();
      auto [h, c] = linear_observation(a0, a1, inst.incidence, inst.q);
      Vector via_filter =
          apply_filter(make_filter({a0, a1}), inst.laplacian, inst.q);
      Vector via_linear = h * inst.weights + c;
      const double scale =
          std::max(1.0, via_filter.cwiseAbs().maxCoeff());
      CHECK((via_filter - via_linear).cwiseAbs().maxCoeff() / scale < 1e-14);
    }
  }
}
