#include "doctest.h"

#include <cmath>
#include <random>

#include "bec/banded.hpp"
#include "bec/errors.hpp"

using namespace bec;

TEST_CASE("band LU solves a pentadiagonal system") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int n : {1, 2, 5, 40}) {
    BandMatrix a(n, 2, 2);
    for (int i = 0; i < n; ++i)
      for (int j = std::max(0, i - 2); j <= std::min(n - 1, i + 2); ++j) a(i, j) = d(rng);
    std::vector<double> x(n);
    for (double& v : x) v = d(rng);
    const auto b = a.multiply(x);
    const auto y = BandLU(a).solve(b);
    for (int i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-9));
  }
}

TEST_CASE("pivoting handles a zero leading entry") {
  BandMatrix a(3, 2, 2);
  a(0, 0) = 0.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 0.0;
  a(1, 2) = 1.0;
  a(2, 1) = 1.0;
  a(2, 2) = 1.0;
  const std::vector<double> x{1.0, 2.0, 3.0};
  const auto y = BandLU(a).solve(a.multiply(x));
  for (int i = 0; i < 3; ++i) CHECK(y[i] == doctest::Approx(x[i]).epsilon(1e-14));
}

TEST_CASE("const access outside the band reads zero") {
  BandMatrix a(6, 2, 2);
  a(0, 0) = 5.0;
  const BandMatrix& c = a;
  CHECK(c(0, 0) == 5.0);
  CHECK(c(0, 4) == 0.0);
  CHECK(c(5, 0) == 0.0);
  CHECK(c.in_band(2, 4));
  CHECK_FALSE(c.in_band(2, 5));
}

TEST_CASE("singular matrix is reported") {
  BandMatrix a(4, 2, 2);
  CHECK_THROWS_AS(BandLU{a}, InternalError);
}
