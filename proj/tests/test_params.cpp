#include "doctest.h"

#include <cmath>
#include <limits>

#include "bec/params.hpp"
#include "support.hpp"

using namespace bec;

TEST_CASE("critical polynomial has the documented values") {
  CHECK(critical_polynomial(0.0) == -40.0);
  CHECK(critical_polynomial(1.0) == -18.0);
  CHECK(critical_polynomial(2.0) == 20.0);
  CHECK(std::abs(critical_polynomial(1.5361) - 2e-4) <= 1e-3);
}

TEST_CASE("nstar_root is the bracketed positive root") {
  const double r = nstar_root();
  CHECK(std::abs(r - 1.5361) <= 5e-4);
  CHECK(std::abs(critical_polynomial(r)) <= 1e-12);
  CHECK(critical_polynomial(r - 1e-9) < 0.0);
  CHECK(critical_polynomial(r + 1e-9) > 0.0);
  CHECK(nstar_root() == r);
}

TEST_CASE("holder exponents") {
  CHECK(holder_exponents(0.0) == std::pair{0.5, 0.125});
  const auto [t, tt] = holder_exponents(0.5);
  CHECK(t == 0.25);
  CHECK(tt == doctest::Approx(1.0 / 14.0).epsilon(1e-15));
  CHECK(holder_exponents(-3.0) == std::pair{0.5, 0.125});
  CHECK_THROWS_AS(holder_exponents(1.0), DomainError);
  CHECK_THROWS_AS(holder_exponents(2.0), DomainError);
}

TEST_CASE("physical parameters are admissible") {
  auto raw = testing::physical(0.01);
  const Params p = validate(raw);
  CHECK(p.n() == 2.0);
  CHECK(p.alpha() == 6.5);
  CHECK(p.theta() == 0.5);
  CHECK(p.theta_time() == 0.125);
  CHECK(p.nstar() > 1.53);
  CHECK(p.nstar() < 1.54);
  CHECK(p.dissipation_power() == 6.0);
  CHECK(p.eps0() == doctest::Approx(std::sqrt(0.5)));
  CHECK(p.eps_star() == doctest::Approx(0.5 * std::sqrt(0.5)));
  const double lo = 5.0 - p.alpha() + p.beta();
  CHECK(lo < p.gamma());
  CHECK(p.gamma() < 1.0);
  CHECK(p.dissipation_power() - 6.0 > -1.0);
}

TEST_CASE("validate is idempotent") {
  const Params p = validate(testing::physical(0.02));
  const Params q = validate(p.to_raw());
  CHECK(q.to_raw().eps == p.eps());
  CHECK(q.eps_star() == p.eps_star());
  CHECK(q.theta() == p.theta());
}

namespace {
ValidationError expect_invalid(const RawParams& raw) {
  try {
    validate(raw);
  } catch (const ValidationError& e) {
    return e;
  }
  FAIL("expected a validation error");
  return ValidationError({});
}
}  // namespace

TEST_CASE("violations are named") {
  auto raw = testing::physical(0.01);
  SUBCASE("n below the critical exponent") {
    raw.n = 1.0;
    CHECK(expect_invalid(raw).has("n.lower"));
  }
  SUBCASE("n at the upper end") {
    raw.n = 3.0;
    CHECK(expect_invalid(raw).has("n.upper"));
  }
  SUBCASE("gamma on the lower boundary") {
    raw.gamma = -1.0;
    const auto e = expect_invalid(raw);
    CHECK(e.has("gamma.lower"));
    CHECK(e.violations().front().bound == -1.0);
  }
  SUBCASE("gamma on the upper boundary") {
    raw.gamma = 1.0;
    CHECK(expect_invalid(raw).has("gamma.upper"));
  }
  SUBCASE("alpha too small") {
    raw.alpha = 3.0;
    CHECK(expect_invalid(raw).has("alpha.lower"));
  }
  SUBCASE("beta outside its interval") {
    raw.beta = 2.5;
    CHECK(expect_invalid(raw).has("beta.upper"));
    raw.beta = -1.0;
    CHECK(expect_invalid(raw).has("beta.lower"));
  }
  SUBCASE("eps outside its interval") {
    raw.eps = 0.0;
    CHECK(expect_invalid(raw).has("eps.lower"));
    raw.eps = 0.8;
    CHECK(expect_invalid(raw).has("eps.upper"));
    raw.eps = 0.5;
    CHECK(expect_invalid(raw).has("eps.star"));
  }
  SUBCASE("non-finite fields") {
    raw.alpha = std::numeric_limits<double>::quiet_NaN();
    CHECK(expect_invalid(raw).has("alpha.finite"));
  }
  SUBCASE("several violations are all reported") {
    raw.n = 1.0;
    raw.gamma = 1.0;
    raw.k = 0.5;
    const auto e = expect_invalid(raw);
    CHECK(e.has("n.lower"));
    CHECK(e.has("gamma.upper"));
    CHECK(e.has("k.lower"));
  }
  SUBCASE("too few cells") {
    raw.N = 4;
    CHECK(expect_invalid(raw).has("N.lower"));
  }
}

TEST_CASE("with_eps revalidates") {
  const Params p = validate(testing::physical(0.05));
  CHECK(p.with_eps(0.2).eps() == 0.2);
  CHECK_THROWS_AS(p.with_eps(0.0), ValidationError);
}
