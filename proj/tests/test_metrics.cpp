#include <doctest.h>

#include "graphtrack/metrics.hpp"
#include "graphtrack/rng.hpp"

using namespace graphtrack;

TEST_CASE("normalized_mse formula cases") {
  Vector a(3), b(3);
  a << 1, 2, 3;
  b = a;
  CHECK(normalized_mse(a, b) == 0.0);

  b << 0, 1, 2;  // error (1,1,1)
  CHECK(normalized_mse(a, b) == doctest::Approx(1.0));

  Vector c(4), d(4);
  c << 2, 0, 0, 0;
  d.setZero();
  CHECK(normalized_mse(c, d) == doctest::Approx(1.0));

  CHECK_THROWS_AS(normalized_mse(a, c), std::invalid_argument);
}

TEST_CASE("normalized_mse scales quadratically") {
  Rng rng(3);
  Vector a(6), b(6);
  for (int i = 0; i < 6; ++i) {
    a[i] = rng.normal();
    b[i] = rng.normal();
  }
  const double base = normalized_mse(a, b);
  CHECK(normalized_mse(3.0 * a, 3.0 * b) == doctest::Approx(9.0 * base));
}

TEST_CASE("eier formula cases") {
  CHECK(eier({0, 1}, {0, 1}, 4) == 0.0);
  // N=4: denominator 12; supports {0,1} vs {0,2} -> symmetric difference 2
  CHECK(eier({0, 2}, {0, 1}, 4) == doctest::Approx(100.0 * 2 / 12));
  // complement miss: est {2,3,4,5} vs true {0,1} -> 6 of 12
  CHECK(eier({2, 3, 4, 5}, {0, 1}, 4) == doctest::Approx(50.0));
  // symmetry and the 100% bound
  CHECK(eier({0, 1}, {2, 3, 4, 5}, 4) == doctest::Approx(50.0));
  CHECK(eier({0, 1, 2, 3, 4, 5}, {}, 4) == doctest::Approx(50.0));
  CHECK(eier({}, {}, 4) == 0.0);
}

TEST_CASE("eier is symmetric and bounded") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + rng.uniform_int(0, 4);
    const int max_edges = n * (n - 1) / 2;
    std::vector<int> a, b;
    for (int m = 0; m < max_edges; ++m) {
      if (rng.uniform() < 0.4) a.push_back(m);
      if (rng.uniform() < 0.4) b.push_back(m);
    }
    const double e1 = eier(a, b, n);
    CHECK(e1 == eier(b, a, n));
    CHECK(e1 >= 0.0);
    CHECK(e1 <= 100.0);
    CHECK((e1 == 0.0) == (a == b));
  }
}
