#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bec/errors.hpp"
#include "bec/grid.hpp"
#include "support.hpp"

using namespace bec;
using bec::testing::max_abs;
using bec::testing::sample;

TEST_CASE("grid construction") {
  const Grid uniform = Grid::build(16, 1.0, 1.0);
  CHECK(uniform.cells() == 16);
  CHECK(uniform.nodes() == 17);
  for (double h : uniform.h()) CHECK(h == doctest::Approx(1.0 / 16.0).epsilon(1e-15));

  const Grid graded = Grid::build(100, 2.0, 2.0);
  CHECK(graded.x()[1] == doctest::Approx(2e-4).epsilon(1e-14));
  CHECK(graded.x().front() == 0.0);
  CHECK(graded.x().back() == 2.0);

  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const Grid g = Grid::build(200, 1.7, p);
    double sum = 0.0;
    for (double w : g.weights()) sum += w;
    CHECK(std::abs(sum - 1.7) <= 1e-14);
  }

  CHECK_THROWS_AS(Grid::build(8, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Grid::build(32, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Grid::build(32, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(Grid::build(32, 1.0, 4.0), DomainError);
}

TEST_CASE("difference stencils are exact where they should be") {
  for (double p : {1.0, 2.0}) {
    const Grid g = Grid::build(64, 1.0, p);
    const auto c = sample(g, [](double) { return 3.0; });
    for (double v : d1(c, g)) CHECK(v == 0.0);
    for (double v : d2(c, g)) CHECK(v == 0.0);
  }
  const Grid g = Grid::build(64, 1.0, 1.0);
  const auto sq = sample(g, [](double x) { return x * x; });
  const auto second = d2(sq, g);
  for (int i = 1; i < g.cells(); ++i) CHECK(second[i] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("first and second differences converge at second order") {
  auto error = [](int N, double p, bool second) {
    const Grid g = Grid::build(N, 1.0, p);
    const auto v = sample(g, [](double x) { return std::sin(3.0 * x); });
    const auto d = second ? d2(v, g) : d1(v, g);
    double e = 0.0;
    for (int i = 1; i < g.cells(); ++i) {
      const double x = g.x()[i];
      const double exact = second ? -9.0 * std::sin(3.0 * x) : 3.0 * std::cos(3.0 * x);
      e = std::max(e, std::abs(d[i] - exact));
    }
    return e;
  };
  for (int N : {32, 64, 128}) {
    CHECK(error(N, 1.0, false) / error(2 * N, 1.0, false) == doctest::Approx(4.0).epsilon(0.05));
    CHECK(error(N, 1.0, true) / error(2 * N, 1.0, true) == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("even reflection at the boundary") {
  const Grid g = Grid::build(64, 1.0, 2.0);
  const auto c = sample(g, [](double x) { return std::cos(std::numbers::pi * x); });
  const auto dc = d1(c, g);
  CHECK(dc.front() == 0.0);
  CHECK(dc.back() == 0.0);

  auto second_at_zero = [](int N) {
    const Grid u = Grid::build(N, 1.0, 1.0);
    const auto sq = sample(u, [](double x) { return x * x; });
    const auto d = d1(sq, u);
    CHECK(d.front() == 0.0);
    return std::abs(d2(sq, u).front() - 2.0);
  };
  CHECK(second_at_zero(32) <= 1e-12);
  CHECK(second_at_zero(128) <= 1e-12);
}

TEST_CASE("point-set stencils agree with grid stencils in the interior") {
  const Grid g = Grid::build(48, 1.0, 2.0);
  const auto v = sample(g, [](double x) { return std::exp(x); });
  const auto a = d2(v, g);
  const auto b = d2_points(g.x(), v);
  for (int i = 1; i < g.cells(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
  CHECK(b.front() == 0.0);
  CHECK(b.back() == 0.0);
}

TEST_CASE("trapezoid quadrature") {
  const Grid g = Grid::build(64, 1.0, 2.0);
  CHECK(quad(sample(g, [](double) { return 1.0; }), g) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quad(sample(g, [](double x) { return x; }), g) == doctest::Approx(0.5).epsilon(1e-15));

  // Reference by a fine midpoint oracle.
  const int M = 1000000;
  double ref = 0.0;
  for (int i = 0; i < M; ++i) {
    const double x = (i + 0.5) / M;
    ref += std::sqrt(x + 0.1) * x * x;
  }
  ref /= M;
  CHECK(ref == doctest::Approx(0.298).epsilon(0.01));
  auto err = [&](int N) {
    const Grid u = Grid::build(N, 1.0, 1.0);
    return std::abs(quad(sample(u, [](double x) { return std::sqrt(x + 0.1); }),
                         sample(u, [](double x) { return x * x; }), u) -
                    ref);
  };
  CHECK(err(64) / err(128) == doctest::Approx(4.0).epsilon(0.05));
  CHECK(err(128) / err(256) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("summation by parts for the second difference") {
  const Grid g = Grid::build(80, 1.0, 2.0);
  const auto u = testing::random_positive_state(g, 7);
  const auto du = d2(u, g);
  // With even reflection the weighted sum of D2 telescopes to zero.
  CHECK(std::abs(quad(du, g)) <= 1e-12 * max_abs(du));
}
